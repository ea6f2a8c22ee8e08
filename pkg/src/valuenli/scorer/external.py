"""Protocol client for external entailment scorers.

Speaks newline-delimited JSON (one object per line, UTF-8, no pretty
printing) over TCP or over the stdio of a spawned subprocess. Requests carry
incrementing ids; responses must echo the id and arrive strictly in request
order. Scoring is chunked at 1,024 pairs per request. A connection is
serialized; callers wanting parallel scoring open multiple connections.
"""

from __future__ import annotations

import json
import select
import shlex
import socket
import subprocess
from typing import Optional, Sequence

from valuenli.errors import ConnectError, DataValueError, ProtocolError
from valuenli.scorer.base import Scorer, check_pair

DEFAULT_TIMEOUT = 30.0
MAX_PAIRS_PER_REQUEST = 1024

# Server-side training legitimately runs far longer than scoring; train
# requests wait up to a day instead of the handshake timeout.
TRAIN_TIMEOUT = 86_400.0


class _TcpTransport:
    def __init__(self, host: str, port: int, timeout: float):
        try:
            self._sock = socket.create_connection((host, port), timeout=timeout)
        except OSError as exc:
            raise ConnectError(f"cannot connect to {host}:{port}: {exc}") from exc
        self._reader = self._sock.makefile("rb")

    def send_line(self, line: bytes) -> None:
        try:
            self._sock.sendall(line)
        except OSError as exc:
            raise ConnectError(f"send failed: {exc}") from exc

    def read_line(self, timeout: float) -> bytes:
        try:
            self._sock.settimeout(timeout)
            line = self._reader.readline()
        except OSError as exc:
            raise ConnectError(f"read failed or timed out: {exc}") from exc
        if not line:
            raise ConnectError("connection closed by server")
        return line

    def close(self) -> None:
        try:
            self._reader.close()
            self._sock.close()
        except OSError:
            pass


class _StdioTransport:
    def __init__(self, command: str, timeout: float):
        argv = shlex.split(command)
        if not argv:
            raise DataValueError("stdio endpoint has an empty command")
        self._timeout = timeout
        self._buf = bytearray()
        try:
            self._proc = subprocess.Popen(
                argv, stdin=subprocess.PIPE, stdout=subprocess.PIPE
            )
        except OSError as exc:
            raise ConnectError(f"cannot spawn {argv[0]!r}: {exc}") from exc

    def send_line(self, line: bytes) -> None:
        try:
            self._proc.stdin.write(line)
            self._proc.stdin.flush()
        except (OSError, ValueError) as exc:
            raise ConnectError(f"send failed: {exc}") from exc

    def read_line(self, timeout: float) -> bytes:
        stream = self._proc.stdout
        while True:
            newline = self._buf.find(b"\n")
            if newline >= 0:
                line = bytes(self._buf[: newline + 1])
                del self._buf[: newline + 1]
                return line
            ready, _, _ = select.select([stream], [], [], timeout)
            if not ready:
                raise ConnectError(
                    f"no response within {timeout} s (server pid {self._proc.pid})"
                )
            chunk = stream.read1(65536)
            if not chunk:
                raise ConnectError("server closed its stdout")
            self._buf.extend(chunk)

    def close(self) -> None:
        if self._proc.poll() is None:
            try:
                self._proc.stdin.close()
            except OSError:
                pass
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                self._proc.kill()
                self._proc.wait()


class ExternalScorer(Scorer):
    """Scorer contract over the wire protocol; ready after the handshake."""

    name = "external"

    def __init__(self, transport, timeout: float):
        self._transport = transport
        self._timeout = timeout
        self._next_id = 0
        self.model_name: Optional[str] = None
        pong = self._request({"op": "ping"})
        if pong.get("op") != "pong":
            raise ProtocolError(f"handshake expected pong, got: {pong!r}")
        self.model_name = pong.get("model")

    def _request(self, payload: dict, timeout: Optional[float] = None) -> dict:
        self._next_id += 1
        request_id = self._next_id
        message = dict(payload)
        message["id"] = request_id
        line = json.dumps(message, separators=(",", ":")) + "\n"
        self._transport.send_line(line.encode("utf-8"))
        raw = self._transport.read_line(timeout if timeout is not None else self._timeout)
        try:
            response = json.loads(raw)
        except json.JSONDecodeError:
            raise ProtocolError(f"response is not JSON: {raw!r}") from None
        if not isinstance(response, dict):
            raise ProtocolError(f"response is not an object: {raw!r}")
        if response.get("id") != request_id:
            raise ProtocolError(
                f"response id {response.get('id')!r} does not echo request "
                f"{request_id}: {raw!r}"
            )
        if "error" in response:
            raise ProtocolError(f"server error: {response['error']}")
        return response

    def score(self, premise: str, hypothesis: str) -> float:
        return self.score_batch([(premise, hypothesis)])[0]

    def score_batch(self, pairs: Sequence[tuple[str, str]]) -> list[float]:
        for premise, hypothesis in pairs:
            check_pair(premise, hypothesis)
        scores: list[float] = []
        for start in range(0, len(pairs), MAX_PAIRS_PER_REQUEST):
            chunk = pairs[start : start + MAX_PAIRS_PER_REQUEST]
            response = self._request(
                {"op": "score_batch", "pairs": [[p, h] for p, h in chunk]}
            )
            got = response.get("scores")
            if not isinstance(got, list) or len(got) != len(chunk):
                raise ProtocolError(
                    f"expected {len(chunk)} scores, got: {json.dumps(response)}"
                )
            for value in got:
                if not isinstance(value, (int, float)) or not 0.0 <= value <= 1.0:
                    raise ProtocolError(
                        f"score out of range [0, 1]: {json.dumps(response)}"
                    )
            scores.extend(float(v) for v in got)
        return scores

    def train(self, train_path: str, val_path: str, hyperparams: dict) -> float:
        """Delegate training to the server; returns its best validation loss."""
        response = self._request(
            {
                "op": "train",
                "train_path": str(train_path),
                "val_path": str(val_path),
                "hyperparams": hyperparams,
            },
            timeout=TRAIN_TIMEOUT,
        )
        loss = response.get("best_val_loss")
        if not isinstance(loss, (int, float)):
            raise ProtocolError(f"train response lacks best_val_loss: {response!r}")
        return float(loss)

    def close(self) -> None:
        self._transport.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()


def connect_external(endpoint: str, timeout: float = DEFAULT_TIMEOUT) -> ExternalScorer:
    """Open a scorer connection to "HOST:PORT" or "stdio:COMMAND"."""
    if endpoint.startswith("stdio:"):
        transport = _StdioTransport(endpoint[len("stdio:") :], timeout)
    else:
        host, sep, port_text = endpoint.rpartition(":")
        if not sep or not host:
            raise DataValueError(
                f"endpoint must be HOST:PORT or stdio:COMMAND, got {endpoint!r}"
            )
        try:
            port = int(port_text)
        except ValueError:
            raise DataValueError(f"invalid port in endpoint {endpoint!r}") from None
        transport = _TcpTransport(host, port, timeout)
    try:
        return ExternalScorer(transport, timeout)
    except Exception:
        transport.close()
        raise
