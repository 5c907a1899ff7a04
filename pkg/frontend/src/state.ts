import type { AssessmentJson, ProjectJson } from './types.js';

export interface ScoreDraft {
  bandIndex: number | null;
  score: number | null;
  motivation: string;
  notes: string;
  rawText: string;
}

export interface ViewState {
  projectId: string | null;
  revision: string | null;
  selectedTool: string | null;
  drafts: Record<string, Record<string, ScoreDraft>>;
  overlays: Record<string, Record<string, number>>;
  stale: boolean;
}

export function newViewState(): ViewState {
  return {
    projectId: null,
    revision: null,
    selectedTool: null,
    drafts: {},
    overlays: {},
    stale: false,
  };
}

export function applyProject(state: ViewState, project: ProjectJson): void {
  if (state.projectId !== project.id) {
    state.drafts = {};
    state.overlays = {};
    state.selectedTool = null;
  }
  state.projectId = project.id;
  state.revision = project.revision;
  state.stale = false;
}

export function selectTool(state: ViewState, toolId: string | null): void {
  state.selectedTool = toolId;
}

export function markStale(state: ViewState): void {
  state.stale = true;
}

export function emptyDraft(): ScoreDraft {
  return { bandIndex: null, score: null, motivation: '', notes: '', rawText: '' };
}

export function draftFor(state: ViewState, toolId: string, variable: string): ScoreDraft {
  const perTool = (state.drafts[toolId] ??= {});
  return (perTool[variable] ??= emptyDraft());
}

export function clearDraft(state: ViewState, toolId: string, variable: string): void {
  const perTool = state.drafts[toolId];
  if (perTool) {
    delete perTool[variable];
  }
}

export function setOverlay(
  state: ViewState,
  toolId: string,
  variable: string,
  score: number,
): void {
  if (!Number.isInteger(score) || score < 1 || score > 10) {
    throw new RangeError(`what-if score must be an integer 1..10, got ${score}`);
  }
  const perTool = (state.overlays[toolId] ??= {});
  perTool[variable] = score;
}

export function clearOverlays(state: ViewState, toolId: string): void {
  delete state.overlays[toolId];
}

// Effective what-if scores: the saved assessment overlaid with slider
// values. Pure — the server document is untouched until a score is
// explicitly submitted.
export function overlayScores(
  assessment: AssessmentJson | undefined,
  overlays: Record<string, number> | undefined,
  variables: readonly string[],
): Record<string, number | null> {
  const effective: Record<string, number | null> = {};
  for (const variable of variables) {
    const overlay = overlays?.[variable];
    if (overlay !== undefined) {
      effective[variable] = overlay;
      continue;
    }
    const saved = assessment?.scores[variable];
    effective[variable] = saved ? saved.score : null;
  }
  return effective;
}
