import type { ThreatLevelJson } from './types.js';

// The what-if overlay recomputes totals locally so sliders feel instant,
// but every interval and label below comes from the server's rubric
// tables; this module holds no thresholds of its own.

export function sumScores(scores: Iterable<number>): number {
  let total = 0;
  for (const score of scores) {
    total += score;
  }
  return total;
}

export function sortedLevels(levels: readonly ThreatLevelJson[]): ThreatLevelJson[] {
  return [...levels].sort((a, b) => a.low - b.low);
}

export function classifyTotal(total: number, levels: readonly ThreatLevelJson[]): string {
  for (const level of levels) {
    const belowHigh = level.high_inclusive ? total <= level.high : total < level.high;
    if (total >= level.low && belowHigh) {
      return level.level;
    }
  }
  throw new RangeError(`total ${total} is outside every threat-level interval`);
}

export interface ThresholdDistance {
  threshold: number;
  level: string;
  distance: number;
  label: string;
}

export function thresholdDistance(
  total: number,
  levels: readonly ThreatLevelJson[],
): ThresholdDistance {
  const ascending = sortedLevels(levels);
  const boundaries = ascending.slice(1);
  if (boundaries.length === 0) {
    throw new RangeError('need at least two threat levels to have a threshold');
  }
  let nearest = boundaries[0];
  for (const candidate of boundaries.slice(1)) {
    if (Math.abs(total - candidate.low) < Math.abs(total - nearest.low)) {
      nearest = candidate;
    }
  }
  const distance = Math.abs(total - nearest.low);
  let label: string;
  if (distance === 0) {
    label = `at ${nearest.level}`;
  } else if (total < nearest.low) {
    label = `${distance} to ${nearest.level}`;
  } else {
    label = `${distance} past ${nearest.level}`;
  }
  return { threshold: nearest.low, level: nearest.level, distance, label };
}
