/**
 * Reader for the pipeline's pairs.tsv interchange format: TSV with columns
 * ArgumentID, StatementID, Category, Premise, Hypothesis, Gold; tabs,
 * newlines, carriage returns and backslashes inside cells are escaped as
 * \t, \n, \r, \\.
 */

import { readFileSync } from 'node:fs';

export interface PairRecord {
  premise: string;
  hypothesis: string;
  /** 1 = entailment, 0 = not-entailment, null = unlabeled. */
  gold: number | null;
}

export function unescapeCell(cell: string): string {
  if (!cell.includes('\\')) return cell;
  let out = '';
  for (let i = 0; i < cell.length; i++) {
    const ch = cell[i];
    if (ch === '\\' && i + 1 < cell.length) {
      const next = cell[i + 1];
      const mapped = next === 't' ? '\t' : next === 'n' ? '\n' : next === 'r' ? '\r' : next === '\\' ? '\\' : null;
      if (mapped !== null) {
        out += mapped;
        i++;
        continue;
      }
    }
    out += ch;
  }
  return out;
}

const REQUIRED = ['ArgumentID', 'StatementID', 'Category', 'Premise', 'Hypothesis', 'Gold'];

export function parsePairsText(text: string): PairRecord[] {
  const lines = text.split('\n');
  if (lines.length > 0 && lines[lines.length - 1] === '') lines.pop();
  if (lines.length === 0) throw new Error('empty pairs file: missing header');
  const header = stripCr(lines[0]).split('\t');
  const positions = new Map<string, number>();
  for (const column of REQUIRED) {
    const index = header.indexOf(column);
    if (index < 0) throw new Error(`pairs file missing column ${column}`);
    positions.set(column, index);
  }
  const records: PairRecord[] = [];
  for (let row = 1; row < lines.length; row++) {
    const fields = stripCr(lines[row]).split('\t');
    if (fields.length !== header.length) {
      throw new Error(`pairs row ${row}: expected ${header.length} fields, got ${fields.length}`);
    }
    const goldCell = fields[positions.get('Gold')!];
    let gold: number | null;
    if (goldCell === '') gold = null;
    else if (goldCell === 'entailment') gold = 1;
    else if (goldCell === 'not-entailment') gold = 0;
    else throw new Error(`pairs row ${row}: unknown gold value ${JSON.stringify(goldCell)}`);
    records.push({
      premise: unescapeCell(fields[positions.get('Premise')!]),
      hypothesis: unescapeCell(fields[positions.get('Hypothesis')!]),
      gold,
    });
  }
  return records;
}

function stripCr(line: string): string {
  return line.endsWith('\r') ? line.slice(0, -1) : line;
}

export function readPairsFile(path: string): PairRecord[] {
  return parsePairsText(readFileSync(path, 'utf-8'));
}

export function requireLabeled(records: PairRecord[], what: string): PairRecord[] {
  if (records.length === 0) throw new Error(`${what} pairs file is empty`);
  for (const record of records) {
    if (record.gold === null) throw new Error(`${what} pairs file has unlabeled rows`);
  }
  return records;
}
