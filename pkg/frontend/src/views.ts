import { classifyTotal, sumScores, thresholdDistance } from './scoring.js';
import type { ScoreDraft } from './state.js';
import type {
  AssessmentJson,
  ExcludedJson,
  FindingJson,
  MatrixPayload,
  MatrixRowJson,
  ProjectListEntry,
  QuestionJson,
  RubricTables,
  SensitivityReportJson,
  ThreatLevelJson,
  ToolJson,
  VariableTable,
} from './types.js';

// Full escaping for attribute values.
export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&#39;');
}

// Element-content escaping: quotes stay literal so server-supplied
// rubric text renders byte-identically (several band texts contain
// apostrophes).
export function escapeText(text: string): string {
  return text.replace(/&/g, '&amp;').replace(/</g, '&lt;').replace(/>/g, '&gt;');
}

function levelClass(level: string): string {
  return `level-${level.toLowerCase()}`;
}

export function renderProjectList(entries: readonly ProjectListEntry[]): string {
  const rows = entries
    .map(
      (entry) => `
      <li>
        <a href="#/p/${encodeURIComponent(entry.id)}">${escapeText(entry.name)}</a>
        <span class="meta">${entry.tools} tool${entry.tools === 1 ? '' : 's'}, modified ${escapeHtml(entry.modified_at)}</span>
      </li>`,
    )
    .join('');
  return `
    <section class="projects">
      <h2>Projects</h2>
      <ul class="project-list">${rows || '<li class="empty">no projects yet</li>'}</ul>
      <form data-form="create-project">
        <label>New project name <input name="name" required></label>
        <button type="submit">Create</button>
      </form>
    </section>`;
}

// The four framing questions, in server order. Every answer must be
// non-empty before scoring unlocks; blank submissions get an inline
// error next to the offending question.
export function renderSetupWizard(
  questions: readonly QuestionJson[],
  answers: Record<string, string>,
  showErrors = false,
): string {
  const fields = questions
    .map((q) => {
      const value = answers[q.field] ?? '';
      const blank = value.trim() === '';
      const error =
        showErrors && blank ? '<p class="error" role="alert">An answer is required.</p>' : '';
      return `
      <div class="question">
        <label for="ctx-${escapeHtml(q.field)}">${escapeText(q.question)}</label>
        <input id="ctx-${escapeHtml(q.field)}" name="${escapeHtml(q.field)}"
               value="${escapeHtml(value)}">
        ${error}
      </div>`;
    })
    .join('');
  return `
    <form class="setup-wizard" data-form="context">
      <h2>Project setup</h2>
      <p class="hint">Scoring unlocks once all four questions are answered. Answers stay editable here.</p>
      ${fields}
      <button type="submit">Save answers</button>
    </form>`;
}

// Running total and threat level for one tool; shows an incomplete
// counter until all seven variables are scored.
export function renderLiveBadge(assessment: AssessmentJson | undefined): string {
  if (!assessment || !assessment.complete) {
    const scored = assessment ? assessment.scored : 0;
    return `<span class="badge incomplete">incomplete (${scored}/7)</span>`;
  }
  const level = assessment.threat_level ?? '';
  return `<span class="badge ${levelClass(level)}">${assessment.score_total} — ${escapeHtml(level)}</span>`;
}

function rawInputFor(variable: VariableTable, tool: ToolJson, draft: ScoreDraft): string {
  if (!variable.quantitative) {
    return '';
  }
  const unit = variable.unit ?? '';
  const modeHint =
    variable.cyber_boundaries && tool.mode === 'cyber'
      ? ' <span class="hint">(cyber tool: derivations use the rescaled cyber boundaries)</span>'
      : '';
  return `
    <div class="raw-entry">
      <label>Raw value (${escapeHtml(unit)})
        <input data-raw-for="${escapeHtml(variable.name)}" value="${escapeHtml(draft.rawText)}"
               placeholder="${unit === 'duration' ? 'seconds' : unit === 'percentage' ? '0–100' : 'euros'}">
      </label>
      <button type="button" data-action="derive" data-variable="${escapeHtml(variable.name)}">Derive band</button>
      ${modeHint}
    </div>`;
}

function bandOptions(variable: VariableTable, selected: number | null): string {
  return variable.bands
    .map((band) => {
      const checked = band.band_index === selected ? ' checked' : '';
      return `
      <label class="band">
        <input type="radio" name="band-${escapeHtml(variable.name)}" value="${band.band_index}"${checked}>
        <strong>${band.low_score}–${band.high_score}</strong>
        <span class="band-text">${escapeText(band.description)}</span>
      </label>`;
    })
    .join('');
}

function savedSummary(assessment: AssessmentJson | undefined, variable: VariableTable): string {
  const saved = assessment?.scores[variable.name];
  if (!saved) {
    return '<p class="saved unscored">not scored yet</p>';
  }
  const raw =
    saved.raw === null ? '' : ` from raw ${saved.raw.value} (${escapeText(saved.raw.kind)})`;
  const motivation = saved.motivation ? ` — ${escapeText(saved.motivation)}` : '';
  return `<p class="saved">saved: band ${saved.band.low_score}–${saved.band.high_score}, score ${saved.score}${raw}${motivation}</p>`;
}

// One section per variable: the five band descriptions are rendered
// exactly as the server supplies them. Quantitative variables take an
// optional raw value that pre-selects the derived band; qualitative
// ones require a motivation before saving.
export function renderScoringPanel(
  tool: ToolJson,
  tables: RubricTables,
  assessment: AssessmentJson | undefined,
  drafts: Record<string, ScoreDraft>,
): string {
  const sections = tables.variables
    .map((variable) => {
      const draft = drafts[variable.name] ?? {
        bandIndex: null,
        score: null,
        motivation: '',
        notes: '',
        rawText: '',
      };
      const selected = draft.bandIndex ?? assessment?.scores[variable.name]?.band.band_index ?? null;
      const motivationField = variable.quantitative
        ? `<label>Motivation <textarea data-motivation-for="${escapeHtml(variable.name)}">${escapeText(draft.motivation)}</textarea></label>`
        : `<label>Motivation <span class="required">(required for this qualitative variable)</span>
             <textarea data-motivation-for="${escapeHtml(variable.name)}" required>${escapeText(draft.motivation)}</textarea></label>`;
      const scoreValue = draft.score ?? assessment?.scores[variable.name]?.score ?? '';
      return `
    <section class="variable" data-variable="${escapeHtml(variable.name)}">
      <h3>${escapeHtml(variable.name)} <span class="short">(${escapeHtml(variable.short)})</span></h3>
      <p class="definition">${escapeText(variable.definition)}</p>
      ${savedSummary(assessment, variable)}
      ${rawInputFor(variable, tool, draft)}
      <div class="bands">${bandOptions(variable, selected)}</div>
      <label>Score <input type="number" min="1" max="10" data-score-for="${escapeHtml(variable.name)}" value="${scoreValue}"></label>
      ${motivationField}
      <label>Notes <input data-notes-for="${escapeHtml(variable.name)}" value="${escapeHtml(draft.notes)}"></label>
      <button type="button" data-action="save-score" data-variable="${escapeHtml(variable.name)}">Save score</button>
    </section>`;
    })
    .join('');
  return `
    <article class="scoring-panel" data-tool="${escapeHtml(tool.id)}">
      <header>
        <h2>${escapeText(tool.name)} <span class="meta">${escapeText(tool.category)} (${escapeText(tool.mode)})</span></h2>
        ${renderLiveBadge(assessment)}
      </header>
      ${sections}
    </article>`;
}

// What-if overlay: sliders recompute the total locally (plain
// summation); the level and threshold distance are evaluated against
// the server-supplied intervals. Nothing here writes to the server.
export function renderWhatIf(
  tool: ToolJson,
  tables: RubricTables,
  assessment: AssessmentJson | undefined,
  effective: Record<string, number | null>,
): string {
  const sliders = tables.variables
    .map((variable) => {
      const value = effective[variable.name];
      const saved = assessment?.scores[variable.name]?.score;
      const savedNote =
        saved === undefined
          ? '<span class="hint">unscored</span>'
          : `<span class="hint">saved ${saved}</span>`;
      return `
      <label class="whatif-slider">
        ${escapeHtml(variable.short)}
        <input type="range" min="1" max="10" step="1"
               data-overlay-for="${escapeHtml(variable.name)}"
               value="${value ?? 1}"${value === null ? ' data-unset="true"' : ''}>
        <output>${value ?? '—'}</output>
        ${savedNote}
      </label>`;
    })
    .join('');
  const values = tables.variables.map((v) => effective[v.name]);
  let verdict: string;
  if (values.some((v) => v === null)) {
    const known = values.filter((v) => v !== null).length;
    verdict = `<p class="whatif-total">what-if total unavailable — ${known}/${values.length} variables have scores</p>`;
  } else {
    const total = sumScores(values as number[]);
    const level = classifyTotal(total, tables.threat_levels);
    const distance = thresholdDistance(total, tables.threat_levels);
    verdict = `
      <p class="whatif-total">what-if total <strong>${total}</strong> —
        <span class="badge ${levelClass(level)}">${escapeHtml(level)}</span></p>
      <p class="whatif-distance">threshold distance: ${escapeText(distance.label)} (${distance.threshold})</p>`;
  }
  return `
    <aside class="whatif" data-tool="${escapeHtml(tool.id)}">
      <h3>What-if overlay</h3>
      <p class="hint">Sliders overlay the saved scores; nothing changes on the server until you save a score from the panel.</p>
      ${sliders}
      ${verdict}
      <button type="button" data-action="clear-overlays">Reset to saved</button>
    </aside>`;
}

export type MatrixSortKey = 'name' | 'total' | string;

export interface MatrixSort {
  key: MatrixSortKey;
  dir: 'asc' | 'desc';
}

export function sortMatrixRows(
  rows: readonly MatrixRowJson[],
  sort: MatrixSort,
): MatrixRowJson[] {
  const sorted = [...rows].sort((a, b) => {
    let cmp: number;
    if (sort.key === 'name') {
      cmp = a.tool_name.localeCompare(b.tool_name);
    } else if (sort.key === 'total') {
      cmp = a.score_total - b.score_total;
    } else {
      cmp = (a.scores[sort.key] ?? 0) - (b.scores[sort.key] ?? 0);
    }
    return sort.dir === 'asc' ? cmp : -cmp;
  });
  return sorted;
}

function excludedNotice(excluded: readonly ExcludedJson[]): string {
  if (excluded.length === 0) {
    return '';
  }
  const items = excluded
    .map(
      (entry) =>
        `<li>${escapeText(entry.tool_name)} — missing ${entry.missing.map(escapeText).join(', ')}</li>`,
    )
    .join('');
  return `<div class="excluded"><p>Excluded (incomplete assessments):</p><ul>${items}</ul></div>`;
}

const MATRIX_COLUMNS = ['R', 'I', 'Dmg', 'Dis', 'L', 'E', 'C'] as const;

// Comparison matrix: sortable columns, sensitivity flags, and a CSV
// download that proxies the server export so both always agree.
export function renderMatrix(
  matrix: MatrixPayload,
  sensitivity: readonly SensitivityReportJson[],
  csvHref: string,
  sort: MatrixSort = { key: 'total', dir: 'desc' },
): string {
  const byTool = new Map(sensitivity.map((report) => [report.tool_id, report]));
  const rows = sortMatrixRows(matrix.rows, sort)
    .map((row) => {
      const report = byTool.get(row.tool_id);
      const flag = report?.boundary_crossed
        ? ' <span class="flag" title="within-band sensitivity crosses a threat-level boundary">⚠</span>'
        : '';
      const span = report ? `${report.min_total}–${report.max_total}` : '';
      const cells = MATRIX_COLUMNS.map((column) => `<td>${row.scores[column]}</td>`).join('');
      return `
      <tr data-tool="${escapeHtml(row.tool_id)}">
        <td class="name">${escapeText(row.tool_name)}${flag}</td>
        ${cells}
        <td class="total">${row.score_total}</td>
        <td class="level ${levelClass(row.threat_level)}">${escapeHtml(row.threat_level)}</td>
        <td class="span">${span}</td>
      </tr>`;
    })
    .join('');
  const header = (key: string, label: string) => {
    const marker = sort.key === key ? (sort.dir === 'asc' ? ' ▲' : ' ▼') : '';
    return `<th data-sort-key="${escapeHtml(key)}">${escapeHtml(label)}${marker}</th>`;
  };
  const variableHeaders = MATRIX_COLUMNS.map((column) => header(column, column)).join('');
  return `
    <section class="matrix">
      <h2>Comparison matrix</h2>
      <table>
        <thead>
          <tr>
            ${header('name', 'Tool name')}
            ${variableHeaders}
            ${header('total', 'Score')}
            <th>Total</th>
            <th>Sensitivity</th>
          </tr>
        </thead>
        <tbody>${rows}</tbody>
      </table>
      ${excludedNotice(matrix.excluded)}
      <p><a class="csv-download" href="${escapeHtml(csvHref)}" download>Download CSV</a></p>
    </section>`;
}

export function renderValidation(findings: readonly FindingJson[]): string {
  if (findings.length === 0) {
    return '<section class="validation"><h2>Validation</h2><p class="ok">no findings</p></section>';
  }
  const items = findings
    .map(
      (finding) => `
      <li class="${escapeHtml(finding.severity)}">
        <strong>${escapeText(finding.severity)}</strong>
        <code>${escapeText(finding.code)}</code>
        ${escapeText(finding.message)}
        <span class="meta">${escapeText(finding.subject)}</span>
      </li>`,
    )
    .join('');
  return `<section class="validation"><h2>Validation</h2><ul>${items}</ul></section>`;
}

// Shown when a mutation is rejected with a stale revision token:
// someone else changed the project, so the only safe move is a reload.
export function renderStalePrompt(): string {
  return `
    <div class="stale-prompt" role="alert">
      <p>This project changed on the server while you were editing.</p>
      <button type="button" data-action="reload-project">Reload latest version</button>
    </div>`;
}

export function renderThreatLegend(levels: readonly ThreatLevelJson[]): string {
  const items = [...levels]
    .sort((a, b) => a.low - b.low)
    .map(
      (level) => `
      <li class="${levelClass(level.level)}">
        <strong>${escapeHtml(level.level)}</strong>
        <span class="range">${level.low}–${level.high}${level.high_inclusive ? '' : ' (exclusive)'}</span>
        <p>${escapeText(level.description)}</p>
      </li>`,
    )
    .join('');
  return `<section class="legend"><h2>Threat levels</h2><ul>${items}</ul></section>`;
}
