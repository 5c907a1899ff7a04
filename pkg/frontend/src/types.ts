export interface BandJson {
  band_index: number;
  low_score: number;
  high_score: number;
  description: string;
}

export interface BoundaryJson {
  band_index: number;
  lower: number;
  lower_inclusive: boolean;
  upper: number | null;
  upper_inclusive: boolean;
}

export interface VariableTable {
  name: string;
  short: string;
  definition: string;
  quantitative: boolean;
  reversed: boolean;
  unit: string | null;
  bands: BandJson[];
  boundaries: BoundaryJson[] | null;
  cyber_boundaries: BoundaryJson[] | null;
}

export interface ThreatLevelJson {
  level: string;
  low: number;
  high: number;
  high_inclusive: boolean;
  description: string;
}

export interface RubricTables {
  version: number;
  variables: VariableTable[];
  threat_levels: ThreatLevelJson[];
}

export interface QuestionJson {
  field: string;
  question: string;
}

export interface RawJson {
  kind: string;
  value: number;
}

export interface ScoreJson {
  variable: string;
  short: string;
  band: BandJson;
  score: number;
  motivation: string;
  notes: string;
  raw: RawJson | null;
}

export interface AssessmentJson {
  tool_id: string;
  scores: Record<string, ScoreJson>;
  scored: number;
  complete: boolean;
  missing: string[];
  score_total: number | null;
  threat_level: string | null;
}

export interface SourceJson {
  reference: string;
  accessed: string;
}

export interface ToolJson {
  id: string;
  name: string;
  category: string;
  mode: string;
  working_principles: string;
  known_vulnerabilities: string;
  sources: SourceJson[];
}

export interface ContextAnswers {
  asset_to_secure: string;
  threats_in_scope: string;
  loss_estimate: string;
  prevention_budget: string;
}

export interface ProjectJson {
  id: string;
  revision: string;
  name: string;
  context: ContextAnswers;
  context_complete: boolean;
  tools: ToolJson[];
  assessments: Record<string, AssessmentJson>;
  created_at: string;
  modified_at: string;
}

export interface ProjectListEntry {
  id: string;
  name: string;
  revision: string;
  tools: number;
  modified_at: string;
}

export interface DeriveResponse {
  variable: string;
  band: BandJson;
  default_score: number;
}

export interface MatrixRowJson {
  tool_id: string;
  tool_name: string;
  scores: Record<string, number>;
  score_total: number;
  threat_level: string;
}

export interface ExcludedJson {
  tool_id: string;
  tool_name: string;
  missing: string[];
}

export interface MatrixPayload {
  revision: string;
  rows: MatrixRowJson[];
  excluded: ExcludedJson[];
}

export interface SensitivityReportJson {
  tool_id: string;
  tool_name: string;
  min_total: number;
  max_total: number;
  levels_reachable: string[];
  boundary_crossed: boolean;
}

export interface SensitivityPayload {
  revision: string;
  reports: SensitivityReportJson[];
  excluded: ExcludedJson[];
}

export interface FindingJson {
  severity: string;
  code: string;
  message: string;
  subject: string;
}

export interface ValidationPayload {
  revision: string;
  findings: FindingJson[];
}

export interface ScoreSubmission {
  variable: string;
  band_index?: number;
  raw?: RawJson;
  score?: number;
  motivation?: string;
  notes?: string;
  revision?: string;
}

export interface ToolSubmission {
  name: string;
  category: string;
  working_principles?: string;
  known_vulnerabilities?: string;
  sources?: { reference: string; accessed?: string }[];
  revision?: string;
}
