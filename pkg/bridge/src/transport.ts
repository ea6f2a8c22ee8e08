/**
 * Line transports for the bridge server: stdio (one client) and TCP
 * (one in-order request stream per connection).
 */

import { createInterface } from 'node:readline';
import { createServer, Server, Socket } from 'node:net';
import { Readable, Writable } from 'node:stream';

import { BridgeServer } from './server.js';

export async function serveStream(
  server: BridgeServer,
  input: Readable,
  output: Writable,
): Promise<void> {
  const lines = createInterface({ input, crlfDelay: Infinity });
  for await (const line of lines) {
    if (!line.trim()) continue;
    output.write(server.handleLine(line) + '\n');
  }
}

export function serveStdio(server: BridgeServer): Promise<void> {
  return serveStream(server, process.stdin, process.stdout);
}

export function serveTcp(server: BridgeServer, port: number, host = '127.0.0.1'): Server {
  const tcp = createServer((socket: Socket) => {
    socket.setNoDelay(true);
    serveStream(server, socket, socket).catch(() => socket.destroy());
    socket.on('error', () => socket.destroy());
  });
  tcp.listen(port, host);
  return tcp;
}
