import { del, get, getText, post, put, resolvePath } from './client.js';
import type {
  ContextAnswers,
  DeriveResponse,
  MatrixPayload,
  ProjectJson,
  ProjectListEntry,
  QuestionJson,
  RawJson,
  RubricTables,
  ScoreSubmission,
  SensitivityPayload,
  AssessmentJson,
  ToolJson,
  ToolSubmission,
  ValidationPayload,
} from './types.js';

export function getRubrics(): Promise<RubricTables> {
  return get<RubricTables>('/api/rubrics');
}

export function getRubricsText(): Promise<string> {
  return getText('/api/rubrics');
}

export function getQuestions(): Promise<{ questions: QuestionJson[] }> {
  return get<{ questions: QuestionJson[] }>('/api/questions');
}

export function derive(variable: string, raw: RawJson, mode = 'kinetic'): Promise<DeriveResponse> {
  return post<DeriveResponse>('/api/derive', { variable, raw, mode });
}

export function listProjects(): Promise<{ projects: ProjectListEntry[] }> {
  return get<{ projects: ProjectListEntry[] }>('/api/projects');
}

export function createProject(name: string, context?: ContextAnswers): Promise<ProjectJson> {
  return post<ProjectJson>('/api/projects', context ? { name, context } : { name });
}

export function getProject(id: string): Promise<ProjectJson> {
  return get<ProjectJson>(`/api/projects/${encodeURIComponent(id)}`);
}

export function deleteProject(id: string): Promise<void> {
  return del(`/api/projects/${encodeURIComponent(id)}`);
}

export function saveContext(
  id: string,
  context: ContextAnswers,
  revision?: string,
): Promise<ProjectJson> {
  return put<ProjectJson>(`/api/projects/${encodeURIComponent(id)}/context`, {
    ...context,
    revision,
  });
}

export function addTool(
  id: string,
  tool: ToolSubmission,
): Promise<{ revision: string; tool: ToolJson }> {
  return post<{ revision: string; tool: ToolJson }>(
    `/api/projects/${encodeURIComponent(id)}/tools`,
    tool,
  );
}

export function removeTool(
  id: string,
  toolId: string,
  revision?: string,
): Promise<{ revision: string }> {
  const query = revision ? `?revision=${encodeURIComponent(revision)}` : '';
  return del<{ revision: string }>(
    `/api/projects/${encodeURIComponent(id)}/tools/${encodeURIComponent(toolId)}${query}`,
  );
}

export function recordScore(
  id: string,
  toolId: string,
  submission: ScoreSubmission,
): Promise<{ revision: string; assessment: AssessmentJson }> {
  return post<{ revision: string; assessment: AssessmentJson }>(
    `/api/projects/${encodeURIComponent(id)}/tools/${encodeURIComponent(toolId)}/scores`,
    submission,
  );
}

export function getMatrix(id: string): Promise<MatrixPayload> {
  return get<MatrixPayload>(`/api/projects/${encodeURIComponent(id)}/matrix`);
}

export function matrixCsvPath(id: string): string {
  return resolvePath(`/api/projects/${encodeURIComponent(id)}/matrix.csv`);
}

export function getMatrixCsv(id: string): Promise<string> {
  return getText(`/api/projects/${encodeURIComponent(id)}/matrix.csv`);
}

export function getSensitivity(id: string): Promise<SensitivityPayload> {
  return get<SensitivityPayload>(`/api/projects/${encodeURIComponent(id)}/sensitivity`);
}

export function getValidation(id: string): Promise<ValidationPayload> {
  return get<ValidationPayload>(`/api/projects/${encodeURIComponent(id)}/validate`);
}
