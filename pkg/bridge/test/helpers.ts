/** Shared tiny-geometry config and toy data for fast tests. */

import { BridgeConfig, DEFAULT_CONFIG } from '../src/config.js';
import { PairRecord } from '../src/pairs.js';

export const TINY: BridgeConfig = {
  ...DEFAULT_CONFIG,
  vocabSize: 256,
  maxSequenceLength: 16,
  hiddenSize: 16,
  numHeads: 2,
  ffnSize: 32,
  trainBatchSize: 16,
  evalInterval: 4,
  maxEpochs: 2,
  warmupSteps: 4,
  learningRate: 0.01,
  seed: 7,
};

export function toyRecords(n: number): PairRecord[] {
  const records: PairRecord[] = [];
  for (let i = 0; i < n; i++) {
    const entail = i % 2 === 0;
    records.push({
      premise: `we value thing${i % 5} alpha beta`,
      hypothesis: entail
        ? `It is important to value thing${i % 5} alpha`
        : 'It is important to value something unrelated',
      gold: entail ? 1 : 0,
    });
  }
  return records;
}
