import * as api from './api.js';
import { ApiError } from './client.js';
import {
  applyProject,
  clearOverlays,
  draftFor,
  markStale,
  newViewState,
  overlayScores,
  setOverlay,
} from './state.js';
import type {
  ContextAnswers,
  ProjectJson,
  QuestionJson,
  RubricTables,
  ToolJson,
} from './types.js';
import {
  renderLiveBadge,
  renderMatrix,
  renderProjectList,
  renderScoringPanel,
  renderSetupWizard,
  renderStalePrompt,
  renderThreatLegend,
  renderValidation,
  renderWhatIf,
} from './views.js';

const state = newViewState();
let tables: RubricTables | null = null;
let questions: QuestionJson[] = [];
let project: ProjectJson | null = null;
let wizardErrors = false;

function appRoot(): HTMLElement {
  const root = document.getElementById('app');
  if (!root) {
    throw new Error('missing #app element');
  }
  return root;
}

function notice(message: string, kind: 'error' | 'info' = 'error'): void {
  const box = document.getElementById('notice');
  if (box) {
    box.className = kind;
    box.textContent = message;
    box.hidden = message === '';
  }
}

async function ensureStatics(): Promise<void> {
  if (!tables) {
    tables = await api.getRubrics();
  }
  if (questions.length === 0) {
    questions = (await api.getQuestions()).questions;
  }
}

async function loadProject(id: string): Promise<ProjectJson> {
  const fresh = await api.getProject(id);
  applyProject(state, fresh);
  project = fresh;
  return fresh;
}

function findTool(current: ProjectJson, toolId: string): ToolJson | undefined {
  return current.tools.find((tool) => tool.id === toolId);
}

function handleFailure(err: unknown): void {
  if (err instanceof ApiError && err.code === 'stale_revision') {
    markStale(state);
    const root = appRoot();
    root.insertAdjacentHTML('afterbegin', renderStalePrompt());
    return;
  }
  notice(err instanceof Error ? err.message : String(err));
}

function contextAnswers(form: HTMLFormElement): ContextAnswers {
  const data = new FormData(form);
  const read = (field: string) => String(data.get(field) ?? '');
  return {
    asset_to_secure: read('asset_to_secure'),
    threats_in_scope: read('threats_in_scope'),
    loss_estimate: read('loss_estimate'),
    prevention_budget: read('prevention_budget'),
  };
}

async function renderRoute(): Promise<void> {
  notice('', 'info');
  await ensureStatics();
  const root = appRoot();
  const hash = window.location.hash.replace(/^#\/?/, '');
  const parts = hash.split('/').filter((part) => part !== '');

  if (parts.length === 0) {
    const listing = await api.listProjects();
    root.innerHTML = renderProjectList(listing.projects);
    return;
  }

  const projectId = decodeURIComponent(parts[1] ?? '');
  if (parts[0] !== 'p' || !projectId) {
    window.location.hash = '#/';
    return;
  }
  const current = await loadProject(projectId);

  if (parts[2] === 'matrix') {
    const [matrix, sensitivity, validation] = await Promise.all([
      api.getMatrix(projectId),
      api.getSensitivity(projectId),
      api.getValidation(projectId),
    ]);
    root.innerHTML =
      renderMatrix(matrix, sensitivity.reports, api.matrixCsvPath(projectId)) +
      renderValidation(validation.findings) +
      renderThreatLegend(tables!.threat_levels);
    return;
  }

  if (parts[2] === 't' && parts[3]) {
    const toolId = decodeURIComponent(parts[3]);
    const tool = findTool(current, toolId);
    if (!tool) {
      notice(`unknown tool ${toolId}`);
      window.location.hash = `#/p/${encodeURIComponent(projectId)}`;
      return;
    }
    if (!current.context_complete) {
      notice('answer the four setup questions before scoring');
      window.location.hash = `#/p/${encodeURIComponent(projectId)}`;
      return;
    }
    state.selectedTool = toolId;
    const assessment = current.assessments[toolId];
    const effective = overlayScores(
      assessment,
      state.overlays[toolId],
      tables!.variables.map((variable) => variable.name),
    );
    root.innerHTML =
      `<p><a href="#/p/${encodeURIComponent(projectId)}">← back to project</a></p>` +
      renderScoringPanel(tool, tables!, assessment, state.drafts[toolId] ?? {}) +
      renderWhatIf(tool, tables!, assessment, effective);
    return;
  }

  const toolLinks = current.tools
    .map((tool) => {
      const badge = renderLiveBadge(current.assessments[tool.id]);
      return `<li><a href="#/p/${encodeURIComponent(projectId)}/t/${encodeURIComponent(tool.id)}">${tool.name}</a> ${badge}</li>`;
    })
    .join('');
  root.innerHTML = `
    <p><a href="#/">← all projects</a></p>
    <h1>${current.name}</h1>
    ${renderSetupWizard(questions, { ...current.context }, wizardErrors)}
    <section class="tools">
      <h2>Tools</h2>
      <ul>${toolLinks || '<li class="empty">no tools yet</li>'}</ul>
      <form data-form="add-tool">
        <label>Name <input name="name" required></label>
        <label>Category <input name="category" required placeholder="e.g. worm, explosive attack"></label>
        <label>Working principles <input name="working_principles"></label>
        <label>Known vulnerabilities <input name="known_vulnerabilities"></label>
        <label>Source <input name="source"></label>
        <button type="submit">Add tool</button>
      </form>
      <p><a href="#/p/${encodeURIComponent(projectId)}/matrix">Comparison matrix →</a></p>
    </section>`;
}

async function rerender(): Promise<void> {
  try {
    await renderRoute();
  } catch (err) {
    handleFailure(err);
  }
}

async function submitContext(form: HTMLFormElement): Promise<void> {
  if (!project) {
    return;
  }
  const answers = contextAnswers(form);
  const blank = Object.values(answers).some((value) => value.trim() === '');
  if (blank) {
    wizardErrors = true;
    await rerender();
    return;
  }
  wizardErrors = false;
  await api.saveContext(project.id, answers, state.revision ?? undefined);
  await rerender();
}

async function submitTool(form: HTMLFormElement): Promise<void> {
  if (!project) {
    return;
  }
  const data = new FormData(form);
  const source = String(data.get('source') ?? '').trim();
  await api.addTool(project.id, {
    name: String(data.get('name') ?? ''),
    category: String(data.get('category') ?? ''),
    working_principles: String(data.get('working_principles') ?? ''),
    known_vulnerabilities: String(data.get('known_vulnerabilities') ?? ''),
    sources: source ? [{ reference: source }] : [],
    revision: state.revision ?? undefined,
  });
  await rerender();
}

function scoreSectionInputs(section: HTMLElement, variable: string) {
  const band = section.querySelector<HTMLInputElement>(
    `input[name="band-${variable}"]:checked`,
  );
  const score = section.querySelector<HTMLInputElement>(`[data-score-for="${variable}"]`);
  const motivation = section.querySelector<HTMLTextAreaElement>(
    `[data-motivation-for="${variable}"]`,
  );
  const notes = section.querySelector<HTMLInputElement>(`[data-notes-for="${variable}"]`);
  const raw = section.querySelector<HTMLInputElement>(`[data-raw-for="${variable}"]`);
  return { band, score, motivation, notes, raw };
}

function rawKindFor(variableName: string): string {
  const table = tables?.variables.find((variable) => variable.name === variableName);
  return table?.unit ?? 'duration';
}

async function deriveBand(section: HTMLElement, variable: string): Promise<void> {
  if (!project || !state.selectedTool) {
    return;
  }
  const { raw } = scoreSectionInputs(section, variable);
  const value = Number(raw?.value ?? '');
  if (!raw || raw.value.trim() === '' || Number.isNaN(value)) {
    notice('enter a numeric raw value first');
    return;
  }
  const tool = findTool(project, state.selectedTool);
  const response = await api.derive(variable, { kind: rawKindFor(variable), value }, tool?.mode);
  const draft = draftFor(state, state.selectedTool, variable);
  draft.bandIndex = response.band.band_index;
  draft.score = response.default_score;
  draft.rawText = raw.value;
  await rerender();
}

async function saveScore(section: HTMLElement, variable: string): Promise<void> {
  if (!project || !state.selectedTool) {
    return;
  }
  const { band, score, motivation, notes, raw } = scoreSectionInputs(section, variable);
  if (!band) {
    notice('choose a band first');
    return;
  }
  const rawText = raw?.value.trim() ?? '';
  const submission = {
    variable,
    band_index: Number(band.value),
    score: score && score.value !== '' ? Number(score.value) : undefined,
    motivation: motivation?.value ?? '',
    notes: notes?.value ?? '',
    raw: undefined as { kind: string; value: number } | undefined,
    revision: state.revision ?? undefined,
  };
  if (rawText !== '' && !Number.isNaN(Number(rawText))) {
    submission.raw = { kind: rawKindFor(variable), value: Number(rawText) };
    submission.band_index = undefined as unknown as number;
  }
  await api.recordScore(project.id, state.selectedTool, submission);
  await rerender();
}

function wireEvents(): void {
  const root = appRoot();

  root.addEventListener('submit', (event) => {
    const form = event.target as HTMLFormElement;
    const kind = form.dataset.form;
    if (!kind) {
      return;
    }
    event.preventDefault();
    const action =
      kind === 'context'
        ? submitContext(form)
        : kind === 'add-tool'
          ? submitTool(form)
          : kind === 'create-project'
            ? api
                .createProject(String(new FormData(form).get('name') ?? ''))
                .then((created) => {
                  window.location.hash = `#/p/${encodeURIComponent(created.id)}`;
                })
            : Promise.resolve();
    action.catch(handleFailure);
  });

  root.addEventListener('click', (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>('[data-action]');
    if (!target) {
      return;
    }
    const action = target.dataset.action;
    const section = target.closest<HTMLElement>('[data-variable]');
    const variable = section?.dataset.variable ?? target.dataset.variable ?? '';
    if (action === 'derive' && section) {
      deriveBand(section, variable).catch(handleFailure);
    } else if (action === 'save-score' && section) {
      saveScore(section, variable).catch(handleFailure);
    } else if (action === 'clear-overlays' && state.selectedTool) {
      clearOverlays(state, state.selectedTool);
      rerender().catch(handleFailure);
    } else if (action === 'reload-project') {
      rerender().catch(handleFailure);
    }
  });

  root.addEventListener('input', (event) => {
    const input = event.target as HTMLInputElement;
    const variable = input.dataset.overlayFor;
    if (variable && state.selectedTool) {
      setOverlay(state, state.selectedTool, variable, Number(input.value));
      rerender().catch(handleFailure);
    }
  });

  window.addEventListener('hashchange', () => {
    wizardErrors = false;
    rerender().catch(handleFailure);
  });
}

export function start(): void {
  wireEvents();
  rerender().catch(handleFailure);
}

start();
