/**
 * Request router for the JSON-lines scorer protocol.
 *
 * One object per line. Supported ops:
 *   {"id":n,"op":"ping"}                                -> {"id":n,"op":"pong","model":...}
 *   {"id":n,"op":"score_batch","pairs":[[p,h],...]}     -> {"id":n,"scores":[...]}
 *   {"id":n,"op":"train","train_path":...,"val_path":...,"hyperparams":{...}}
 *                                                       -> {"id":n,"status":"ok","best_val_loss":x}
 * Errors come back as {"id":n,"error":"..."}, with id -1 when the line
 * could not be parsed. Responses are produced strictly in request order;
 * one training job runs at a time and scoring is rejected meanwhile.
 */

import { join } from 'node:path';

import { applyOverrides, BridgeConfig, TrainOverrides } from './config.js';
import { PairClassifier } from './model.js';
import { readPairsFile, requireLabeled } from './pairs.js';
import { trainModel } from './train.js';

type Json = Record<string, unknown>;

export class BridgeServer {
  readonly config: BridgeConfig;
  private model: PairClassifier;
  private training = false;
  private readonly log: (line: string) => void;

  constructor(config: BridgeConfig, log: (line: string) => void = (line) => process.stderr.write(line + '\n')) {
    this.config = config;
    this.log = log;
    this.model = new PairClassifier(config, config.seed);
  }

  handleLine(line: string): string {
    let request: Json;
    try {
      const parsed = JSON.parse(line);
      if (typeof parsed !== 'object' || parsed === null || Array.isArray(parsed)) {
        return respond({ id: -1, error: 'request is not a JSON object' });
      }
      request = parsed as Json;
    } catch {
      return respond({ id: -1, error: 'malformed JSON line' });
    }
    const id = typeof request.id === 'number' ? request.id : -1;
    try {
      return respond(this.dispatch(id, request));
    } catch (error) {
      return respond({ id, error: error instanceof Error ? error.message : String(error) });
    }
  }

  private dispatch(id: number, request: Json): Json {
    switch (request.op) {
      case 'ping':
        return { id, op: 'pong', model: this.config.modelName };
      case 'score_batch':
        return { id, scores: this.scoreBatch(request) };
      case 'train':
        return { id, ...this.train(request) };
      default:
        return { id, error: `unknown op ${JSON.stringify(request.op ?? null)}` };
    }
  }

  private scoreBatch(request: Json): number[] {
    if (this.training) throw new Error('training in progress');
    const pairs = request.pairs;
    if (!Array.isArray(pairs)) throw new Error('score_batch needs a pairs array');
    if (pairs.length > this.config.evalBatchSize) {
      throw new Error(
        `batch too large: ${pairs.length} > ${this.config.evalBatchSize} pairs per request`,
      );
    }
    const typed: Array<[string, string]> = pairs.map((entry, index) => {
      if (!Array.isArray(entry) || entry.length !== 2
          || typeof entry[0] !== 'string' || typeof entry[1] !== 'string') {
        throw new Error(`pair ${index} is not a [premise, hypothesis] string pair`);
      }
      return [entry[0], entry[1]];
    });
    return this.model.scorePairs(typed);
  }

  private train(request: Json): Json {
    if (this.training) throw new Error('training in progress');
    if (typeof request.train_path !== 'string' || typeof request.val_path !== 'string') {
      throw new Error('train needs train_path and val_path strings');
    }
    const overrides = (request.hyperparams ?? {}) as TrainOverrides;
    const config = applyOverrides(this.config, overrides);

    this.training = true;
    try {
      const trainRecords = requireLabeled(readPairsFile(request.train_path), 'training');
      const valRecords = requireLabeled(readPairsFile(request.val_path), 'validation');
      // Fresh seeded initialization so identical train calls are identical.
      this.model.reinitialize(config.seed);
      const result = trainModel(this.model, trainRecords, valRecords, config, this.log);
      const checkpoint = join(config.checkpointDir, 'best.json');
      this.model.saveCheckpoint(checkpoint);
      this.log(
        `training done: steps=${result.stepsRun} best_val_loss=${result.bestValLoss.toFixed(6)} ` +
        `checkpoint=${checkpoint}${result.stoppedEarly ? ' (early stop)' : ''}`,
      );
      return { status: 'ok', best_val_loss: result.bestValLoss };
    } finally {
      this.training = false;
    }
  }
}

function respond(payload: Json): string {
  return JSON.stringify(payload);
}
