/**
 * Per-batch loss weights proportional to inverse class distributions,
 * normalized to sum to 2. Shared formula with the pipeline's trainer:
 * both outcomes present -> w_c = 2 * (1/n_c) / (1/n_entail + 1/n_not);
 * a single-outcome batch gives the present outcome weight 2.
 */

export interface LabelWeights {
  wEntail: number;
  wNot: number;
}

export function computeLabelWeights(nEntail: number, nNot: number): LabelWeights {
  if (nEntail < 0 || nNot < 0) {
    throw new Error('batch counts must be nonnegative');
  }
  if (nEntail === 0 && nNot === 0) {
    throw new Error('cannot weight an empty batch');
  }
  if (nEntail === 0) return { wEntail: 0, wNot: 2 };
  if (nNot === 0) return { wEntail: 2, wNot: 0 };
  const invEntail = 1 / nEntail;
  const invNot = 1 / nNot;
  const denom = invEntail + invNot;
  return { wEntail: (2 * invEntail) / denom, wNot: (2 * invNot) / denom };
}
