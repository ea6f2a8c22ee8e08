/**
 * Deterministic hashing tokenizer. Lowercased word tokens are hashed into a
 * fixed vocabulary (FNV-1a), so no vocabulary files are needed and encoding
 * is stable across runs and platforms. A premise/hypothesis pair becomes one
 * sequence: [CLS] premise [SEP] hypothesis [SEP], truncated and padded.
 */

export const PAD_ID = 0;
export const CLS_ID = 1;
export const SEP_ID = 2;
export const RESERVED = 3;

const TOKEN_RE = /[a-z0-9']+/g;

export function tokenize(text: string): string[] {
  return text.toLowerCase().match(TOKEN_RE) ?? [];
}

export function tokenId(token: string, vocabSize: number): number {
  let hash = 0x811c9dc5;
  for (let i = 0; i < token.length; i++) {
    hash ^= token.charCodeAt(i);
    hash = Math.imul(hash, 0x01000193) >>> 0;
  }
  return RESERVED + (hash % (vocabSize - RESERVED));
}

export interface EncodedPair {
  ids: Int32Array;
  mask: Float32Array;
}

export function encodePair(
  premise: string,
  hypothesis: string,
  vocabSize: number,
  maxLen: number,
): EncodedPair {
  const ids = new Int32Array(maxLen).fill(PAD_ID);
  const mask = new Float32Array(maxLen).fill(0);
  const premiseTokens = tokenize(premise);
  const hypothesisTokens = tokenize(hypothesis);

  // Budget the sequence: hypothesis keeps at least a third of the slots.
  const body = maxLen - 3;
  const hypothesisBudget = Math.min(hypothesisTokens.length, Math.max(1, Math.floor(body / 3)));
  const premiseBudget = Math.min(premiseTokens.length, body - hypothesisBudget);

  let position = 0;
  const push = (id: number) => {
    ids[position] = id;
    mask[position] = 1;
    position++;
  };
  push(CLS_ID);
  for (const token of premiseTokens.slice(0, premiseBudget)) push(tokenId(token, vocabSize));
  push(SEP_ID);
  for (const token of hypothesisTokens.slice(0, body - premiseBudget)) {
    if (position >= maxLen - 1) break;
    push(tokenId(token, vocabSize));
  }
  push(SEP_ID);
  return { ids, mask };
}

export function encodeBatch(
  pairs: Array<[string, string]>,
  vocabSize: number,
  maxLen: number,
): { ids: Int32Array; mask: Float32Array } {
  const ids = new Int32Array(pairs.length * maxLen);
  const mask = new Float32Array(pairs.length * maxLen);
  pairs.forEach(([premise, hypothesis], row) => {
    const encoded = encodePair(premise, hypothesis, vocabSize, maxLen);
    ids.set(encoded.ids, row * maxLen);
    mask.set(encoded.mask, row * maxLen);
  });
  return { ids, mask };
}
