"""Regenerate the synthetic demo corpus under data/demo/."""

from pathlib import Path

from valuenli.corpus import write_arguments, write_labels
from valuenli.statements import write_statements
from valuenli.synthetic import make_separable_fixture


def main():
    out_dir = Path(__file__).resolve().parent.parent / "data" / "demo"
    out_dir.mkdir(parents=True, exist_ok=True)
    fixture = make_separable_fixture(n_arguments=200, statements_per_category=4, seed=0)
    write_arguments(fixture.arguments, out_dir / "arguments.tsv")
    write_labels(fixture.labels, out_dir / "labels.tsv")
    write_statements(fixture.bank, out_dir / "statements.tsv")
    print(f"wrote {len(fixture.arguments)} arguments, {len(fixture.bank)} statements "
          f"to {out_dir}")


if __name__ == "__main__":
    main()
