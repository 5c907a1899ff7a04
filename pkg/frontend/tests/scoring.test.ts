import { describe, expect, it } from 'vitest';
import { classifyTotal, sortedLevels, sumScores, thresholdDistance } from '../src/scoring.js';
import type { ThreatLevelJson } from '../src/types.js';

// Served shape, most-severe-first like the live endpoint.
const LEVELS: ThreatLevelJson[] = [
  { level: 'Severe', low: 50, high: 70, high_inclusive: true, description: 'severe' },
  { level: 'Medium', low: 25, high: 50, high_inclusive: false, description: 'medium' },
  { level: 'Minor', low: 0, high: 25, high_inclusive: false, description: 'minor' },
];

describe('sumScores', () => {
  it('adds score vectors', () => {
    expect(sumScores([9, 8, 6, 4, 2, 7, 10])).toBe(46);
    expect(sumScores([])).toBe(0);
    expect(sumScores([7])).toBe(7);
  });
});

describe('sortedLevels', () => {
  it('orders by lower bound regardless of served order', () => {
    expect(sortedLevels(LEVELS).map((l) => l.level)).toEqual(['Minor', 'Medium', 'Severe']);
    expect(sortedLevels([...LEVELS].reverse()).map((l) => l.level)).toEqual([
      'Minor',
      'Medium',
      'Severe',
    ]);
  });
});

describe('classifyTotal', () => {
  it('respects half-open boundaries from the served intervals', () => {
    expect(classifyTotal(0, LEVELS)).toBe('Minor');
    expect(classifyTotal(24, LEVELS)).toBe('Minor');
    expect(classifyTotal(25, LEVELS)).toBe('Medium');
    expect(classifyTotal(49, LEVELS)).toBe('Medium');
    expect(classifyTotal(50, LEVELS)).toBe('Severe');
    expect(classifyTotal(70, LEVELS)).toBe('Severe');
  });

  it('rejects totals outside every interval', () => {
    expect(() => classifyTotal(-1, LEVELS)).toThrow(RangeError);
    expect(() => classifyTotal(71, LEVELS)).toThrow(RangeError);
  });
});

describe('thresholdDistance', () => {
  it('reports the distance to the nearest level boundary', () => {
    expect(thresholdDistance(24, LEVELS)).toMatchObject({
      distance: 1,
      level: 'Medium',
      threshold: 25,
      label: '1 to Medium',
    });
    expect(thresholdDistance(25, LEVELS).label).toBe('at Medium');
    expect(thresholdDistance(47, LEVELS)).toMatchObject({
      distance: 3,
      level: 'Severe',
      threshold: 50,
      label: '3 to Severe',
    });
    expect(thresholdDistance(50, LEVELS).label).toBe('at Severe');
  });

  it('uses past/to phrasing around a boundary', () => {
    expect(thresholdDistance(30, LEVELS).label).toBe('5 past Medium');
    expect(thresholdDistance(7, LEVELS).label).toBe('18 to Medium');
    expect(thresholdDistance(70, LEVELS).label).toBe('20 past Severe');
  });

  it('always picks the nearest boundary over the whole score range', () => {
    for (let total = 7; total <= 70; total += 1) {
      const result = thresholdDistance(total, LEVELS);
      const expected = Math.min(Math.abs(total - 25), Math.abs(total - 50));
      expect(result.distance).toBe(expected);
      expect([25, 50]).toContain(result.threshold);
      expect(Math.abs(total - result.threshold)).toBe(expected);
    }
  });

  it('needs at least two levels', () => {
    expect(() => thresholdDistance(10, LEVELS.slice(0, 1))).toThrow(RangeError);
  });
});
