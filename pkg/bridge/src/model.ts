/**
 * Compact transformer encoder for sequence-pair classification, built on
 * tfjs core ops with explicit variables. Small enough to fine-tune on a CPU
 * in seconds, deterministic for a fixed seed, and serializable to a single
 * JSON checkpoint file.
 */

import * as tf from '@tensorflow/tfjs';
import { readFileSync, writeFileSync, mkdirSync } from 'node:fs';
import { dirname } from 'node:path';

import { BridgeConfig } from './config.js';
import { encodeBatch } from './tokenizer.js';

const LN_EPS = 1e-5;

interface BlockVars {
  wq: tf.Variable; wk: tf.Variable; wv: tf.Variable; wo: tf.Variable;
  bq: tf.Variable; bk: tf.Variable; bv: tf.Variable; bo: tf.Variable;
  ln1Gamma: tf.Variable; ln1Beta: tf.Variable;
  ffnW1: tf.Variable; ffnB1: tf.Variable; ffnW2: tf.Variable; ffnB2: tf.Variable;
  ln2Gamma: tf.Variable; ln2Beta: tf.Variable;
}

function layerNorm(x: tf.Tensor, gamma: tf.Variable, beta: tf.Variable): tf.Tensor {
  const mean = x.mean(-1, true);
  const centered = x.sub(mean);
  const variance = centered.square().mean(-1, true);
  return centered.div(variance.add(LN_EPS).sqrt()).mul(gamma).add(beta);
}

/**
 * [batch, len, dIn] x [dIn, dOut] + bias, computed in 2-D: tfjs does not
 * reduce matMul gradients across broadcast batch dimensions.
 */
function dense(x: tf.Tensor, w: tf.Variable, b: tf.Variable): tf.Tensor {
  const [batch, length, dIn] = x.shape as [number, number, number];
  return x.reshape([batch * length, dIn]).matMul(w).add(b)
    .reshape([batch, length, w.shape[1] as number]);
}

export class PairClassifier {
  readonly config: BridgeConfig;
  private embedding!: tf.Variable;
  private positional!: tf.Variable;
  private blocks: BlockVars[] = [];
  private clsW!: tf.Variable;
  private clsB!: tf.Variable;

  constructor(config: BridgeConfig, seed: number) {
    this.config = config;
    this.initialize(seed);
  }

  private initialize(seed: number): void {
    const { vocabSize, maxSequenceLength, hiddenSize, ffnSize, numLayers } = this.config;
    const std = 0.02;
    // Derived per-parameter seeds must never be 0: tfjs treats a falsy seed
    // as "no seed" and initializes nondeterministically.
    let counter = 0;
    const nextSeed = () => {
      let h = (Math.imul(seed | 0, 0x9e3779b1) ^ Math.imul(++counter, 0x85ebca6b)) >>> 0;
      h = Math.imul(h ^ (h >>> 13), 0xc2b2ae35) >>> 0;
      return h || 1;
    };
    const normal = (shape: number[]) =>
      tf.variable(tf.randomNormal(shape, 0, std, 'float32', nextSeed()));
    const zeros = (shape: number[]) => tf.variable(tf.zeros(shape));
    const ones = (shape: number[]) => tf.variable(tf.ones(shape));

    this.dispose();
    this.blocks = [];
    this.embedding = normal([vocabSize, hiddenSize]);
    this.positional = normal([maxSequenceLength, hiddenSize]);
    for (let layer = 0; layer < numLayers; layer++) {
      this.blocks.push({
        wq: normal([hiddenSize, hiddenSize]), bq: zeros([hiddenSize]),
        wk: normal([hiddenSize, hiddenSize]), bk: zeros([hiddenSize]),
        wv: normal([hiddenSize, hiddenSize]), bv: zeros([hiddenSize]),
        wo: normal([hiddenSize, hiddenSize]), bo: zeros([hiddenSize]),
        ln1Gamma: ones([hiddenSize]), ln1Beta: zeros([hiddenSize]),
        ffnW1: normal([hiddenSize, ffnSize]), ffnB1: zeros([ffnSize]),
        ffnW2: normal([ffnSize, hiddenSize]), ffnB2: zeros([hiddenSize]),
        ln2Gamma: ones([hiddenSize]), ln2Beta: zeros([hiddenSize]),
      });
    }
    this.clsW = normal([hiddenSize, 2]);
    this.clsB = zeros([2]);
  }

  reinitialize(seed: number): void {
    this.initialize(seed);
  }

  /** Named variables, matrices flagged for decoupled weight decay. */
  parameters(): Array<{ name: string; variable: tf.Variable; decay: boolean }> {
    const entries: Array<{ name: string; variable: tf.Variable; decay: boolean }> = [
      { name: 'embedding', variable: this.embedding, decay: true },
      { name: 'positional', variable: this.positional, decay: true },
    ];
    this.blocks.forEach((block, index) => {
      const named: Array<[string, tf.Variable, boolean]> = [
        ['wq', block.wq, true], ['bq', block.bq, false],
        ['wk', block.wk, true], ['bk', block.bk, false],
        ['wv', block.wv, true], ['bv', block.bv, false],
        ['wo', block.wo, true], ['bo', block.bo, false],
        ['ln1Gamma', block.ln1Gamma, false], ['ln1Beta', block.ln1Beta, false],
        ['ffnW1', block.ffnW1, true], ['ffnB1', block.ffnB1, false],
        ['ffnW2', block.ffnW2, true], ['ffnB2', block.ffnB2, false],
        ['ln2Gamma', block.ln2Gamma, false], ['ln2Beta', block.ln2Beta, false],
      ];
      for (const [suffix, variable, decay] of named) {
        entries.push({ name: `block${index}.${suffix}`, variable, decay });
      }
    });
    entries.push({ name: 'clsW', variable: this.clsW, decay: true });
    entries.push({ name: 'clsB', variable: this.clsB, decay: false });
    return entries;
  }

  /** Logits [batch, 2] for encoded inputs. */
  logits(ids: tf.Tensor2D, mask: tf.Tensor2D): tf.Tensor2D {
    const { hiddenSize, numHeads, maxSequenceLength } = this.config;
    const headSize = hiddenSize / numHeads;
    const batch = ids.shape[0];

    let x = tf.gather(this.embedding, ids.flatten())
      .reshape([batch, maxSequenceLength, hiddenSize])
      .add(this.positional);
    // Additive mask: padded positions get a large negative attention score.
    const attentionBias = mask.reshape([batch, 1, 1, maxSequenceLength]).sub(1).mul(1e9);

    for (const block of this.blocks) {
      const toHeads = (w: tf.Variable, b: tf.Variable) =>
        dense(x, w, b)
          .reshape([batch, maxSequenceLength, numHeads, headSize])
          .transpose([0, 2, 1, 3]);
      const q = toHeads(block.wq, block.bq);
      const k = toHeads(block.wk, block.bk);
      const v = toHeads(block.wv, block.bv);
      const scores = q.matMul(k, false, true).div(Math.sqrt(headSize)).add(attentionBias);
      const context = tf.softmax(scores).matMul(v)
        .transpose([0, 2, 1, 3])
        .reshape([batch, maxSequenceLength, hiddenSize]);
      const attended = dense(context, block.wo, block.bo);
      x = layerNorm(x.add(attended), block.ln1Gamma, block.ln1Beta);
      const ffn = dense(dense(x, block.ffnW1, block.ffnB1).relu(), block.ffnW2, block.ffnB2);
      x = layerNorm(x.add(ffn), block.ln2Gamma, block.ln2Beta);
    }
    const cls = x.slice([0, 0, 0], [batch, 1, hiddenSize]).reshape([batch, hiddenSize]);
    return cls.matMul(this.clsW).add(this.clsB) as tf.Tensor2D;
  }

  /** Mean weighted cross-entropy over a labeled batch. */
  loss(ids: tf.Tensor2D, mask: tf.Tensor2D, labels: tf.Tensor1D, sampleWeights: tf.Tensor1D): tf.Scalar {
    const logProbs = tf.logSoftmax(this.logits(ids, mask));
    const oneHot = tf.oneHot(labels, 2);
    const perExample = logProbs.mul(oneHot).sum(-1).neg();
    return perExample.mul(sampleWeights).mean() as tf.Scalar;
  }

  /** Entailment probabilities in [0, 1], chunked at the eval batch size. */
  scorePairs(pairs: Array<[string, string]>): number[] {
    const { vocabSize, maxSequenceLength, evalBatchSize } = this.config;
    const out: number[] = [];
    for (let start = 0; start < pairs.length; start += evalBatchSize) {
      const chunk = pairs.slice(start, start + evalBatchSize);
      const encoded = encodeBatch(chunk, vocabSize, maxSequenceLength);
      const scores = tf.tidy(() => {
        const ids = tf.tensor2d(encoded.ids, [chunk.length, maxSequenceLength], 'int32');
        const mask = tf.tensor2d(encoded.mask, [chunk.length, maxSequenceLength]);
        return tf.softmax(this.logits(ids, mask)).slice([0, 1], [chunk.length, 1]).flatten();
      });
      out.push(...Array.from(scores.dataSync()));
      scores.dispose();
    }
    return out;
  }

  snapshot(): Map<string, Float32Array> {
    const state = new Map<string, Float32Array>();
    for (const { name, variable } of this.parameters()) {
      state.set(name, new Float32Array(variable.dataSync() as Float32Array));
    }
    return state;
  }

  restore(state: Map<string, Float32Array>): void {
    for (const { name, variable } of this.parameters()) {
      const data = state.get(name);
      if (!data) throw new Error(`checkpoint is missing parameter ${name}`);
      const replacement = tf.tensor(data, variable.shape as number[]);
      variable.assign(replacement);
      replacement.dispose();
    }
  }

  saveCheckpoint(path: string): void {
    const payload: Record<string, { shape: number[]; data: string }> = {};
    for (const { name, variable } of this.parameters()) {
      const data = variable.dataSync() as Float32Array;
      payload[name] = {
        shape: variable.shape as number[],
        data: Buffer.from(data.buffer, data.byteOffset, data.byteLength).toString('base64'),
      };
    }
    mkdirSync(dirname(path), { recursive: true });
    writeFileSync(path, JSON.stringify({ model: this.config.modelName, parameters: payload }));
  }

  loadCheckpoint(path: string): void {
    const parsed = JSON.parse(readFileSync(path, 'utf-8'));
    const state = new Map<string, Float32Array>();
    for (const [name, entry] of Object.entries<{ shape: number[]; data: string }>(parsed.parameters)) {
      const buffer = Buffer.from(entry.data, 'base64');
      state.set(name, new Float32Array(buffer.buffer, buffer.byteOffset, buffer.byteLength / 4));
    }
    this.restore(state);
  }

  dispose(): void {
    if (!this.embedding) return;
    for (const { variable } of this.parameters()) variable.dispose();
  }
}
