/**
 * Fine-tuning loop: Adam with linear warmup plus decoupled weight decay,
 * optional per-batch inverse-frequency loss weights, validation every
 * evalInterval steps, early stopping on patience, and persistence of the
 * best checkpoint.
 */

import * as tf from '@tensorflow/tfjs';

import { BridgeConfig } from './config.js';
import { PairClassifier } from './model.js';
import { PairRecord } from './pairs.js';
import { encodeBatch } from './tokenizer.js';
import { computeLabelWeights } from './weights.js';

export interface TrainResult {
  bestValLoss: number;
  bestStep: number;
  stepsRun: number;
  stoppedEarly: boolean;
}

/** Deterministic PRNG for batch shuffling. */
function mulberry32(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state + 0x6d2b79f5) >>> 0;
    let t = state;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function shuffled(n: number, random: () => number): Int32Array {
  const order = new Int32Array(n);
  for (let i = 0; i < n; i++) order[i] = i;
  for (let i = n - 1; i > 0; i--) {
    const j = Math.floor(random() * (i + 1));
    const swap = order[i];
    order[i] = order[j];
    order[j] = swap;
  }
  return order;
}

interface EncodedSet {
  ids: Int32Array;
  mask: Float32Array;
  labels: Int32Array;
  size: number;
}

function encodeRecords(records: PairRecord[], config: BridgeConfig): EncodedSet {
  const { vocabSize, maxSequenceLength } = config;
  const encoded = encodeBatch(
    records.map((r) => [r.premise, r.hypothesis] as [string, string]),
    vocabSize,
    maxSequenceLength,
  );
  const labels = new Int32Array(records.length);
  records.forEach((record, index) => {
    labels[index] = record.gold ?? 0;
  });
  return { ids: encoded.ids, mask: encoded.mask, labels, size: records.length };
}

function sliceBatch(set: EncodedSet, rows: Int32Array, config: BridgeConfig) {
  const L = config.maxSequenceLength;
  const ids = new Int32Array(rows.length * L);
  const mask = new Float32Array(rows.length * L);
  const labels = new Int32Array(rows.length);
  rows.forEach((row, i) => {
    ids.set(set.ids.subarray(row * L, (row + 1) * L), i * L);
    mask.set(set.mask.subarray(row * L, (row + 1) * L), i * L);
    labels[i] = set.labels[row];
  });
  return { ids, mask, labels };
}

function evalLoss(model: PairClassifier, set: EncodedSet, config: BridgeConfig): number {
  const L = config.maxSequenceLength;
  let total = 0;
  for (let start = 0; start < set.size; start += config.evalBatchSize) {
    const size = Math.min(config.evalBatchSize, set.size - start);
    const value = tf.tidy(() => {
      const ids = tf.tensor2d(set.ids.subarray(start * L, (start + size) * L), [size, L], 'int32');
      const mask = tf.tensor2d(set.mask.subarray(start * L, (start + size) * L), [size, L]);
      const labels = tf.tensor1d(set.labels.subarray(start, start + size), 'int32');
      const ones = tf.ones([size]) as tf.Tensor1D;
      return model.loss(ids, mask, labels as tf.Tensor1D, ones).dataSync()[0];
    });
    total += value * size;
  }
  return total / set.size;
}

export function trainModel(
  model: PairClassifier,
  trainRecords: PairRecord[],
  valRecords: PairRecord[],
  config: BridgeConfig,
  log: (line: string) => void = () => {},
): TrainResult {
  const trainSet = encodeRecords(trainRecords, config);
  const valSet = encodeRecords(valRecords, config);
  const L = config.maxSequenceLength;

  const optimizer = tf.train.adam(config.learningRate);
  const parameters = model.parameters();
  const varList = parameters.map((p) => p.variable);
  const random = mulberry32(config.seed);

  let step = 0;
  let stale = 0;
  let bestValLoss = Number.POSITIVE_INFINITY;
  let bestStep = 0;
  let bestState = model.snapshot();
  let stopped = false;
  let lastEvalStep = -1;

  const evaluate = () => {
    const valLoss = evalLoss(model, valSet, config);
    if (valLoss < bestValLoss) {
      bestValLoss = valLoss;
      bestStep = step;
      bestState = model.snapshot();
      stale = 0;
    } else {
      stale += 1;
    }
    log(`eval step=${step} val_loss=${valLoss.toFixed(6)} best=${bestValLoss.toFixed(6)}`);
  };

  for (let epoch = 0; epoch < config.maxEpochs && !stopped; epoch++) {
    const order = shuffled(trainSet.size, random);
    for (let start = 0; start < trainSet.size; start += config.trainBatchSize) {
      const rows = order.subarray(start, Math.min(start + config.trainBatchSize, trainSet.size));
      const batch = sliceBatch(trainSet, rows, config);

      let wEntail = 1;
      let wNot = 1;
      if (config.weightedLoss) {
        let nEntail = 0;
        for (const label of batch.labels) nEntail += label;
        const weights = computeLabelWeights(nEntail, batch.labels.length - nEntail);
        wEntail = weights.wEntail;
        wNot = weights.wNot;
        log(`batch weights entail=${wEntail.toFixed(4)} not=${wNot.toFixed(4)}`);
      }
      const sampleWeights = new Float32Array(batch.labels.length);
      batch.labels.forEach((label, i) => {
        sampleWeights[i] = label === 1 ? wEntail : wNot;
      });

      step += 1;
      const warmup = Math.min(1, step / Math.max(1, config.warmupSteps));
      const learningRate = config.learningRate * warmup;
      (optimizer as unknown as { learningRate: number }).learningRate = learningRate;

      const ids = tf.tensor2d(batch.ids, [rows.length, L], 'int32');
      const mask = tf.tensor2d(batch.mask, [rows.length, L]);
      const labels = tf.tensor1d(batch.labels, 'int32') as tf.Tensor1D;
      const sw = tf.tensor1d(sampleWeights) as tf.Tensor1D;
      const { grads, value } = tf.variableGrads(
        () => model.loss(ids, mask, labels, sw),
        varList,
      );
      optimizer.applyGradients(grads as unknown as Parameters<typeof optimizer.applyGradients>[0]);
      value.dispose();
      Object.values(grads).forEach((g) => g.dispose());
      ids.dispose();
      mask.dispose();
      labels.dispose();
      sw.dispose();

      if (config.weightDecay > 0) {
        tf.tidy(() => {
          for (const { variable, decay } of parameters) {
            if (decay) variable.assign(variable.mul(1 - learningRate * config.weightDecay));
          }
        });
      }

      if (step % config.evalInterval === 0) {
        lastEvalStep = step;
        evaluate();
        if (stale >= config.patience) {
          stopped = true;
          break;
        }
      }
    }
  }

  if (lastEvalStep !== step && !stopped) {
    evaluate();
  }
  model.restore(bestState);
  optimizer.dispose();
  return { bestValLoss, bestStep, stepsRun: step, stoppedEarly: stopped };
}
