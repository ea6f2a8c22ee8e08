import { once } from 'node:events';
import { createConnection } from 'node:net';
import { PassThrough } from 'node:stream';
import { describe, expect, it } from 'vitest';

import { BridgeServer } from '../src/server.js';
import { serveStream, serveTcp } from '../src/transport.js';
import { TINY } from './helpers.js';

function collectLines(stream: PassThrough): string[] {
  const chunks: Buffer[] = [];
  stream.on('data', (chunk) => chunks.push(chunk));
  return chunks as unknown as string[];
}

describe('stdio-style stream transport', () => {
  it('answers each line in order and skips blank lines', async () => {
    const server = new BridgeServer({ ...TINY }, () => {});
    const input = new PassThrough();
    const output = new PassThrough();
    const done = serveStream(server, input, output);
    input.write('{"id":1,"op":"ping"}\n');
    input.write('\n');
    input.write('{"id":2,"op":"score_batch","pairs":[["p","h"]]}\n');
    input.end();
    await done;
    const lines = output.read().toString().trim().split('\n');
    expect(lines).toHaveLength(2);
    expect(JSON.parse(lines[0])).toMatchObject({ id: 1, op: 'pong' });
    expect(JSON.parse(lines[1]).scores).toHaveLength(1);
  });
});

describe('tcp transport', () => {
  it('serves the protocol on a socket', async () => {
    const server = new BridgeServer({ ...TINY }, () => {});
    const tcp = serveTcp(server, 0);
    await once(tcp, 'listening');
    const address = tcp.address();
    if (typeof address === 'string' || address === null) throw new Error('no port');

    const socket = createConnection({ host: '127.0.0.1', port: address.port });
    await once(socket, 'connect');
    socket.write('{"id":9,"op":"ping"}\n');
    const [data] = await once(socket, 'data');
    expect(JSON.parse(data.toString())).toEqual({
      id: 9,
      op: 'pong',
      model: TINY.modelName,
    });
    socket.end();
    tcp.close();
  });
});
