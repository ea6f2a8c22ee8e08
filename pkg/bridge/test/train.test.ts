import { describe, expect, it } from 'vitest';

import { BridgeConfig } from '../src/config.js';
import { PairClassifier } from '../src/model.js';
import { PairRecord } from '../src/pairs.js';
import { trainModel } from '../src/train.js';
import { TINY, toyRecords } from './helpers.js';

describe('trainModel', () => {
  it('returns a finite best loss on a 64-pair toy set', { timeout: 120_000 }, () => {
    const model = new PairClassifier(TINY, TINY.seed);
    const result = trainModel(model, toyRecords(64), toyRecords(16), TINY);
    expect(Number.isFinite(result.bestValLoss)).toBe(true);
    expect(result.stepsRun).toBeGreaterThan(0);
    model.dispose();
  });

  it('is deterministic across runs for a fixed seed', { timeout: 120_000 }, () => {
    const run = () => {
      const model = new PairClassifier(TINY, TINY.seed);
      const result = trainModel(model, toyRecords(48), toyRecords(16), TINY);
      model.dispose();
      return result.bestValLoss;
    };
    expect(run()).toBe(run());
  });

  it('stops after the second evaluation with patience 1 and rising loss', { timeout: 120_000 }, () => {
    // Validation labels are inverted relative to training, so every step
    // that helps training hurts validation.
    const train = toyRecords(32);
    const val = toyRecords(16).map((r) => ({ ...r, gold: r.gold === 1 ? 0 : 1 }));
    const config: BridgeConfig = {
      ...TINY,
      evalInterval: 1,
      patience: 1,
      maxEpochs: 10,
      warmupSteps: 1,
      learningRate: 0.2,
      seed: 1,
    };
    const model = new PairClassifier(config, config.seed);
    const result = trainModel(model, train, val, config);
    expect(result.stoppedEarly).toBe(true);
    expect(result.stepsRun).toBe(2);
    expect(result.bestStep).toBe(1);
    model.dispose();
  });

  it('logs the 10/90 batch weight pair when weighted', { timeout: 120_000 }, () => {
    const records: PairRecord[] = [];
    for (let i = 0; i < 100; i++) {
      records.push({
        premise: `premise ${i}`,
        hypothesis: `It is important to check ${i}`,
        gold: i < 10 ? 1 : 0,
      });
    }
    const config: BridgeConfig = {
      ...TINY,
      trainBatchSize: 100,
      maxEpochs: 1,
      weightedLoss: true,
    };
    const lines: string[] = [];
    const model = new PairClassifier(config, config.seed);
    trainModel(model, records, records.slice(0, 8), config, (line) => lines.push(line));
    const weightLines = lines.filter((line) => line.startsWith('batch weights'));
    expect(weightLines).toHaveLength(1);
    expect(weightLines[0]).toContain('entail=1.8000');
    expect(weightLines[0]).toContain('not=0.2000');
    model.dispose();
  });
});
