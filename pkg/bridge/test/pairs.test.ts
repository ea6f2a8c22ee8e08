import { describe, expect, it } from 'vitest';

import { parsePairsText, requireLabeled, unescapeCell } from '../src/pairs.js';

const HEADER = 'ArgumentID\tStatementID\tCategory\tPremise\tHypothesis\tGold';

describe('pairs.tsv reader', () => {
  it('parses labeled rows', () => {
    const text =
      HEADER + '\n' +
      'A1\tS1\tHedonism\tfun premise\tIt is important to have fun\tentailment\n' +
      'A1\tS2\tFace\tfun premise\tIt is important to keep face\tnot-entailment\n';
    const records = parsePairsText(text);
    expect(records).toHaveLength(2);
    expect(records[0]).toEqual({
      premise: 'fun premise',
      hypothesis: 'It is important to have fun',
      gold: 1,
    });
    expect(records[1].gold).toBe(0);
  });

  it('unescapes embedded whitespace the way the pipeline writes it', () => {
    expect(unescapeCell('contains\\ta tab\\nand a line\\\\end')).toBe(
      'contains\ta tab\nand a line\\end',
    );
    const text = HEADER + '\nA1\tS1\tHedonism\twith\\ttab\\nline\th\tentailment\n';
    expect(parsePairsText(text)[0].premise).toBe('with\ttab\nline');
  });

  it('treats an empty gold cell as unlabeled', () => {
    const text = HEADER + '\nA1\tS1\tHedonism\tp\th\t\n';
    const records = parsePairsText(text);
    expect(records[0].gold).toBeNull();
    expect(() => requireLabeled(records, 'training')).toThrow(/unlabeled/);
  });

  it('rejects a missing column', () => {
    expect(() => parsePairsText('ArgumentID\tPremise\tHypothesis\n')).toThrow(/missing column/);
  });

  it('rejects unknown gold values', () => {
    const text = HEADER + '\nA1\tS1\tHedonism\tp\th\tmaybe\n';
    expect(() => parsePairsText(text)).toThrow(/unknown gold/);
  });
});
