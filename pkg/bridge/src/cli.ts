/**
 * bridge serve --stdio | --port N [options]
 *
 * Options (env fallbacks in parentheses):
 *   --model-name NAME       served model name (BRIDGE_MODEL_NAME)
 *   --checkpoint-dir DIR    where best.json is written (BRIDGE_CHECKPOINT_DIR)
 *   --load-checkpoint PATH  start from an existing checkpoint
 *   --seed N                initialization seed (BRIDGE_SEED)
 *   --weighted              per-batch inverse-frequency loss weights
 *   --eval-interval N       steps between validation evaluations
 *   --warmup-steps N        linear learning-rate warmup steps
 */

import * as tf from '@tensorflow/tfjs';

import { DEFAULT_CONFIG } from './config.js';
import { PairClassifier } from './model.js';
import { BridgeServer } from './server.js';
import { serveStdio, serveTcp } from './transport.js';

tf.enableProdMode();

function usage(): never {
  process.stderr.write(
    'usage: bridge serve --stdio | --port N [--model-name NAME] ' +
    '[--checkpoint-dir DIR] [--load-checkpoint PATH] [--seed N] ' +
    '[--weighted] [--eval-interval N] [--warmup-steps N]\n',
  );
  process.exit(2);
}

export async function main(argv: string[]): Promise<void> {
  if (argv[0] !== 'serve') usage();

  const config = { ...DEFAULT_CONFIG };
  config.modelName = process.env.BRIDGE_MODEL_NAME ?? config.modelName;
  config.checkpointDir = process.env.BRIDGE_CHECKPOINT_DIR ?? config.checkpointDir;
  if (process.env.BRIDGE_SEED) config.seed = Number(process.env.BRIDGE_SEED);

  let stdio = false;
  let port: number | null = null;
  let loadCheckpoint: string | null = null;
  const args = argv.slice(1);
  for (let i = 0; i < args.length; i++) {
    const flag = args[i];
    const next = () => {
      i += 1;
      if (i >= args.length) usage();
      return args[i];
    };
    if (flag === '--stdio') stdio = true;
    else if (flag === '--port') port = Number(next());
    else if (flag === '--model-name') config.modelName = next();
    else if (flag === '--checkpoint-dir') config.checkpointDir = next();
    else if (flag === '--load-checkpoint') loadCheckpoint = next();
    else if (flag === '--seed') config.seed = Number(next());
    else if (flag === '--weighted') config.weightedLoss = true;
    else if (flag === '--eval-interval') config.evalInterval = Number(next());
    else if (flag === '--warmup-steps') config.warmupSteps = Number(next());
    else usage();
  }
  if (!stdio && port === null) usage();
  if (port !== null && !Number.isInteger(port)) usage();

  const server = new BridgeServer(config);
  if (loadCheckpoint) {
    // Warm-start scoring from a persisted checkpoint.
    const model = (server as unknown as { model: PairClassifier }).model;
    model.loadCheckpoint(loadCheckpoint);
    process.stderr.write(`loaded checkpoint ${loadCheckpoint}\n`);
  }

  if (stdio) {
    await serveStdio(server);
  } else {
    serveTcp(server, port!);
    process.stderr.write(`listening on 127.0.0.1:${port}\n`);
  }
}

main(process.argv.slice(2)).catch((error) => {
  process.stderr.write(`fatal: ${error?.message ?? error}\n`);
  process.exit(1);
});
