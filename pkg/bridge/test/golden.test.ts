/**
 * Golden-transcript replay: recorded request/response lines must match
 * byte-identically, except floating-point score payloads, which must agree
 * to 1e-6.
 */

import { readFileSync } from 'node:fs';
import { join } from 'node:path';
import { describe, expect, it } from 'vitest';

import { DEFAULT_CONFIG } from '../src/config.js';
import { BridgeServer } from '../src/server.js';

interface TranscriptStep {
  send?: Record<string, unknown>;
  sendRaw?: string;
  expect: Record<string, unknown>;
  compare: 'exact' | 'scores';
}

function loadTranscript(): TranscriptStep[] {
  const path = join(__dirname, 'golden-transcript.jsonl');
  return readFileSync(path, 'utf-8')
    .split('\n')
    .filter((line) => line.trim())
    .map((line) => JSON.parse(line));
}

describe('golden transcript', () => {
  it('replays byte-identically apart from score payloads', () => {
    const server = new BridgeServer({ ...DEFAULT_CONFIG }, () => {});
    for (const step of loadTranscript()) {
      let line: string;
      if (step.sendRaw !== undefined) {
        line = step.sendRaw;
      } else {
        const request = { ...step.send };
        if (request.pairs === 'OVERSIZE_1025') {
          request.pairs = Array.from({ length: 1025 }, (_, i) => [`p${i}`, `h${i}`]);
        }
        line = JSON.stringify(request);
      }
      const response = server.handleLine(line);
      if (step.compare === 'exact') {
        expect(response).toBe(JSON.stringify(step.expect));
      } else {
        const parsed = JSON.parse(response);
        const expected = step.expect as { id: number; scores: number[] };
        expect(parsed.id).toBe(expected.id);
        expect(parsed.scores).toHaveLength(expected.scores.length);
        parsed.scores.forEach((score: number, i: number) => {
          expect(score).toBeGreaterThanOrEqual(0);
          expect(score).toBeLessThanOrEqual(1);
          expect(Math.abs(score - expected.scores[i])).toBeLessThan(1e-6);
        });
      }
    }
  });

  it('keeps responses in request order', () => {
    const server = new BridgeServer({ ...DEFAULT_CONFIG }, () => {});
    const ids = [5, 6, 7, 8];
    const responses = ids.map((id) =>
      JSON.parse(server.handleLine(JSON.stringify({ id, op: 'ping' }))),
    );
    expect(responses.map((r) => r.id)).toEqual(ids);
  });
});
