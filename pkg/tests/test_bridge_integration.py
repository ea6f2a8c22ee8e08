"""End-to-end check against the built bridge server (skipped if not built).

Build the bridge first: cd bridge && npm install && npm run build.
"""

from pathlib import Path

import pytest

from valuenli.scorer import connect_external

BRIDGE_CLI = Path(__file__).resolve().parent.parent / "bridge" / "dist" / "cli.js"

pytestmark = pytest.mark.skipif(
    not BRIDGE_CLI.exists(), reason="bridge not built (bridge/dist/cli.js missing)"
)


def test_handshake_and_scoring_over_stdio():
    endpoint = f"stdio:node {BRIDGE_CLI} serve --stdio"
    with connect_external(endpoint, timeout=60) as scorer:
        assert scorer.model_name == "compact-uncased-transformer"
        scores = scorer.score_batch(
            [
                ("we value solar power", "It is important to protect the environment"),
                ("taxes are high", "It is important to have wealth"),
                ("a", "b"),
            ]
        )
    assert len(scores) == 3
    assert all(0.0 <= score <= 1.0 for score in scores)


def test_scores_are_deterministic_across_connections():
    endpoint = f"stdio:node {BRIDGE_CLI} serve --stdio"
    pair = [("we value things", "It is important to value things")]
    with connect_external(endpoint, timeout=60) as first:
        a = first.score_batch(pair)
    with connect_external(endpoint, timeout=60) as second:
        b = second.score_batch(pair)
    assert a == b
