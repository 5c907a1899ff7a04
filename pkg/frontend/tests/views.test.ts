import { describe, expect, it } from 'vitest';
import type {
  AssessmentJson,
  BandJson,
  MatrixPayload,
  QuestionJson,
  RubricTables,
  SensitivityReportJson,
  ToolJson,
} from '../src/types.js';
import {
  escapeHtml,
  escapeText,
  renderLiveBadge,
  renderMatrix,
  renderScoringPanel,
  renderSetupWizard,
  renderStalePrompt,
  renderValidation,
  renderWhatIf,
  sortMatrixRows,
} from '../src/views.js';

function bands(prefix: string): BandJson[] {
  const pairs: [number, number, number][] = [
    [1, 9, 10],
    [2, 7, 8],
    [3, 5, 6],
    [4, 3, 4],
    [5, 1, 2],
  ];
  return pairs.map(([index, low, high]) => ({
    band_index: index,
    low_score: low,
    high_score: high,
    description: `${prefix} band ${index} description`,
  }));
}

const TABLES: RubricTables = {
  version: 1,
  variables: [
    {
      name: 'Resistance',
      short: 'R',
      definition: 'how hard it is to neutralize',
      quantitative: false,
      reversed: false,
      unit: null,
      bands: bands('resistance'),
      boundaries: null,
      cyber_boundaries: null,
    },
    {
      name: 'IntrusionTiming',
      short: 'I',
      definition: 'time to reach the target',
      quantitative: true,
      reversed: false,
      unit: 'duration',
      bands: bands('intrusion'),
      boundaries: [],
      cyber_boundaries: null,
    },
    {
      name: 'DisruptionTiming',
      short: 'Dis',
      definition: 'duration of the interruption',
      quantitative: true,
      reversed: false,
      unit: 'duration',
      bands: bands('disruption'),
      boundaries: [],
      cyber_boundaries: [],
    },
  ],
  threat_levels: [
    { level: 'Severe', low: 50, high: 70, high_inclusive: true, description: 'severe text' },
    { level: 'Medium', low: 25, high: 50, high_inclusive: false, description: 'medium text' },
    { level: 'Minor', low: 0, high: 25, high_inclusive: false, description: 'minor text' },
  ],
};

const QUESTIONS: QuestionJson[] = [
  { field: 'asset_to_secure', question: 'Which asset do you want to secure?' },
  { field: 'threats_in_scope', question: 'From which threats you want to secure them?' },
  { field: 'loss_estimate', question: "How many losses you will face if you don't succeed?" },
  { field: 'prevention_budget', question: 'How many resources are you ready to invest for prevention?' },
];

const TOOL: ToolJson = {
  id: 'worm-x',
  name: 'worm X',
  category: 'worm',
  mode: 'cyber',
  working_principles: '',
  known_vulnerabilities: '',
  sources: [],
};

function completeAssessment(): AssessmentJson {
  return {
    tool_id: 'worm-x',
    scores: {
      Resistance: {
        variable: 'Resistance',
        short: 'R',
        band: bands('resistance')[0],
        score: 9,
        motivation: 'no countermeasure',
        notes: '',
        raw: null,
      },
    },
    scored: 7,
    complete: true,
    missing: [],
    score_total: 51,
    threat_level: 'Severe',
  };
}

describe('escaping', () => {
  it('escapes all markup metacharacters in attribute values', () => {
    expect(escapeHtml('<b>&"\'</b>')).toBe('&lt;b&gt;&amp;&quot;&#39;&lt;/b&gt;');
    expect(escapeHtml('plain € ≤ text')).toBe('plain € ≤ text');
  });

  it('keeps quotes literal in element content', () => {
    expect(escapeText("can't & <won't>")).toBe("can't &amp; &lt;won't&gt;");
    expect(escapeText("the instrument's action")).toBe("the instrument's action");
  });
});

describe('renderSetupWizard', () => {
  it('renders the four questions in order', () => {
    const html = renderSetupWizard(QUESTIONS, {});
    const positions = QUESTIONS.map((q) => html.indexOf(escapeText(q.question)));
    expect(positions.every((p) => p >= 0)).toBe(true);
    expect([...positions].sort((a, b) => a - b)).toEqual(positions);
  });

  it('flags blank answers inline when asked to show errors', () => {
    const answers = {
      asset_to_secure: 'depot',
      threats_in_scope: '   ',
      loss_estimate: '',
      prevention_budget: 'budget',
    };
    const html = renderSetupWizard(QUESTIONS, answers, true);
    expect(html.match(/An answer is required\./g)).toHaveLength(2);
    const silent = renderSetupWizard(QUESTIONS, answers, false);
    expect(silent).not.toContain('An answer is required.');
  });

  it('mentions that scoring stays locked until answered', () => {
    expect(renderSetupWizard(QUESTIONS, {})).toContain('Scoring unlocks');
  });
});

describe('renderLiveBadge', () => {
  it('shows total and level for a complete assessment', () => {
    const html = renderLiveBadge(completeAssessment());
    expect(html).toContain('51 — Severe');
    expect(html).toContain('level-severe');
  });

  it('shows an incomplete counter without a level otherwise', () => {
    const partial = { ...completeAssessment(), complete: false, scored: 5, threat_level: null };
    const html = renderLiveBadge(partial);
    expect(html).toContain('incomplete (5/7)');
    expect(html).not.toContain('Severe');
    expect(renderLiveBadge(undefined)).toContain('incomplete (0/7)');
  });
});

describe('renderScoringPanel', () => {
  it('renders every band description exactly as served', () => {
    const html = renderScoringPanel(TOOL, TABLES, undefined, {});
    for (const variable of TABLES.variables) {
      for (const band of variable.bands) {
        expect(html).toContain(band.description);
      }
      expect(html).toContain(variable.definition);
    }
  });

  it('marks motivation required only on qualitative variables', () => {
    const html = renderScoringPanel(TOOL, TABLES, undefined, {});
    expect(html.match(/required for this qualitative variable/g)).toHaveLength(1);
  });

  it('offers raw-value inputs on quantitative variables only', () => {
    const html = renderScoringPanel(TOOL, TABLES, undefined, {});
    expect(html).toContain('data-raw-for="IntrusionTiming"');
    expect(html).toContain('data-raw-for="DisruptionTiming"');
    expect(html).not.toContain('data-raw-for="Resistance"');
  });

  it('hints at the cyber rescale for cyber tools with a cyber table', () => {
    const html = renderScoringPanel(TOOL, TABLES, undefined, {});
    expect(html).toContain('rescaled cyber boundaries');
    const kinetic = renderScoringPanel({ ...TOOL, mode: 'kinetic' }, TABLES, undefined, {});
    expect(kinetic).not.toContain('rescaled cyber boundaries');
  });

  it('shows the saved score summary', () => {
    const html = renderScoringPanel(TOOL, TABLES, completeAssessment(), {});
    expect(html).toContain('saved: band 9–10, score 9');
    expect(html).toContain('no countermeasure');
  });
});

describe('renderWhatIf', () => {
  it('sums locally and classifies with the served intervals', () => {
    const effective = { Resistance: 10, IntrusionTiming: 10, DisruptionTiming: 10 };
    const html = renderWhatIf(TOOL, TABLES, undefined, effective);
    expect(html).toContain('what-if total <strong>30</strong>');
    expect(html).toContain('Medium');
    expect(html).toContain('threshold distance: 5 past Medium (25)');
  });

  it('declares the total unavailable while any variable is unscored', () => {
    const effective = { Resistance: 9, IntrusionTiming: null, DisruptionTiming: 4 };
    const html = renderWhatIf(TOOL, TABLES, undefined, effective);
    expect(html).toContain('what-if total unavailable — 2/3 variables have scores');
    expect(html).toContain('data-unset="true"');
  });

  it('renders one slider per served variable', () => {
    const effective = { Resistance: 5, IntrusionTiming: 5, DisruptionTiming: 5 };
    const html = renderWhatIf(TOOL, TABLES, undefined, effective);
    expect(html.match(/type="range"/g)).toHaveLength(TABLES.variables.length);
  });
});

const MATRIX: MatrixPayload = {
  revision: 'r1',
  rows: [
    {
      tool_id: 'ied',
      tool_name: 'IED',
      scores: { R: 5, I: 9, Dmg: 5, Dis: 1, L: 1, E: 5, C: 7 },
      score_total: 33,
      threat_level: 'Medium',
    },
    {
      tool_id: 'worm-x',
      tool_name: 'worm X',
      scores: { R: 9, I: 9, Dmg: 9, Dis: 3, L: 7, E: 7, C: 9 },
      score_total: 53,
      threat_level: 'Severe',
    },
  ],
  excluded: [{ tool_id: 'rat', tool_name: 'backdoor RAT', missing: ['Latency'] }],
};

const SENSITIVITY: SensitivityReportJson[] = [
  {
    tool_id: 'worm-x',
    tool_name: 'worm X',
    min_total: 53,
    max_total: 60,
    levels_reachable: ['Severe'],
    boundary_crossed: false,
  },
  {
    tool_id: 'ied',
    tool_name: 'IED',
    min_total: 33,
    max_total: 40,
    levels_reachable: ['Medium'],
    boundary_crossed: true,
  },
];

describe('sortMatrixRows', () => {
  it('defaults to score descending', () => {
    const sorted = sortMatrixRows(MATRIX.rows, { key: 'total', dir: 'desc' });
    expect(sorted.map((r) => r.tool_name)).toEqual(['worm X', 'IED']);
  });

  it('sorts by name and by variable column', () => {
    expect(
      sortMatrixRows(MATRIX.rows, { key: 'name', dir: 'asc' }).map((r) => r.tool_name),
    ).toEqual(['IED', 'worm X']);
    expect(sortMatrixRows(MATRIX.rows, { key: 'C', dir: 'asc' }).map((r) => r.tool_name)).toEqual([
      'IED',
      'worm X',
    ]);
  });
});

describe('renderMatrix', () => {
  it('renders rows sorted by score descending by default', () => {
    const html = renderMatrix(MATRIX, SENSITIVITY, '/api/projects/demo/matrix.csv');
    expect(html.indexOf('worm X')).toBeLessThan(html.indexOf('IED'));
  });

  it('flags only tools whose sensitivity crosses a threat boundary', () => {
    const html = renderMatrix(MATRIX, SENSITIVITY, '/x.csv');
    expect(html).toContain('crosses a threat-level boundary');
    const iedStart = html.indexOf('data-tool="ied"');
    expect(iedStart).toBeGreaterThan(-1);
    expect(html.slice(0, iedStart)).not.toContain('⚠');
    expect(html.slice(iedStart)).toContain('⚠');
  });

  it('links the server CSV export and lists excluded tools', () => {
    const html = renderMatrix(MATRIX, SENSITIVITY, '/api/projects/demo/matrix.csv');
    expect(html).toContain('href="/api/projects/demo/matrix.csv"');
    expect(html).toContain('backdoor RAT');
    expect(html).toContain('missing Latency');
  });

  it('shows the sensitivity span per row', () => {
    const html = renderMatrix(MATRIX, SENSITIVITY, '/x.csv');
    expect(html).toContain('53–60');
    expect(html).toContain('33–40');
  });
});

describe('renderValidation and renderStalePrompt', () => {
  it('lists findings with severity', () => {
    const html = renderValidation([
      { severity: 'error', code: 'empty_motivation', message: 'motivation missing', subject: 'x:R' },
    ]);
    expect(html).toContain('empty_motivation');
    expect(renderValidation([])).toContain('no findings');
  });

  it('prompts for a reload on stale revisions', () => {
    const html = renderStalePrompt();
    expect(html).toContain('changed on the server');
    expect(html).toContain('data-action="reload-project"');
  });
});
