/**
 * Bridge configuration. Training defaults: 5 epochs, train batch 128,
 * eval batch 1024, 250 warmup steps, weight decay 0.01, early-stopping
 * patience 10, evaluation every 500 steps.
 */

export interface BridgeConfig {
  modelName: string;
  maxEpochs: number;
  trainBatchSize: number;
  evalBatchSize: number;
  warmupSteps: number;
  weightDecay: number;
  patience: number;
  evalInterval: number;
  weightedLoss: boolean;
  seed: number;
  learningRate: number;
  checkpointDir: string;
  /** Model geometry; compact enough to train on a CPU in seconds. */
  vocabSize: number;
  maxSequenceLength: number;
  hiddenSize: number;
  numHeads: number;
  numLayers: number;
  ffnSize: number;
}

export const DEFAULT_CONFIG: BridgeConfig = {
  modelName: 'compact-uncased-transformer',
  maxEpochs: 5,
  trainBatchSize: 128,
  evalBatchSize: 1024,
  warmupSteps: 250,
  weightDecay: 0.01,
  patience: 10,
  evalInterval: 500,
  weightedLoss: false,
  seed: 0,
  learningRate: 1e-3,
  checkpointDir: 'checkpoints',
  vocabSize: 2048,
  maxSequenceLength: 32,
  hiddenSize: 32,
  numHeads: 2,
  numLayers: 1,
  ffnSize: 64,
};

/** Hyperparameters accepted inside a train request. */
export interface TrainOverrides {
  max_epochs?: number;
  batch_size?: number;
  weighted_loss?: boolean;
  patience?: number;
  eval_every?: number;
  seed?: number;
  learning_rate?: number;
}

export function applyOverrides(config: BridgeConfig, overrides: TrainOverrides): BridgeConfig {
  const merged = { ...config };
  if (overrides.max_epochs !== undefined) merged.maxEpochs = overrides.max_epochs;
  if (overrides.batch_size !== undefined) merged.trainBatchSize = overrides.batch_size;
  if (overrides.weighted_loss !== undefined) merged.weightedLoss = overrides.weighted_loss;
  if (overrides.patience !== undefined) merged.patience = overrides.patience;
  if (overrides.eval_every !== undefined) merged.evalInterval = overrides.eval_every;
  if (overrides.seed !== undefined) merged.seed = overrides.seed;
  if (overrides.learning_rate !== undefined) merged.learningRate = overrides.learning_rate;
  return merged;
}
