"""Rebuild the four reference tables and write them as CSV files.

    python scripts/reproduce_tables.py --out results/ --jobs 4
"""

import argparse
import io
import time
from pathlib import Path

from ardesign.cli import main as cli_main
from ardesign.tables import TABLE_NAMES


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="results", help="output directory")
    ap.add_argument("--lambda", dest="lam", default="1", help="rate for table1/table2")
    ap.add_argument("--jobs", default="1")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name in TABLE_NAMES:
        buf = io.StringIO()
        t0 = time.perf_counter()
        argv = ["table", name, "--jobs", args.jobs]
        if name in ("table1", "table2"):
            argv += ["--lambda", args.lam]
        code = cli_main(argv, out=buf)
        if code:
            raise SystemExit(code)
        (out / f"{name}.csv").write_text(buf.getvalue())
        print(f"{name}: {len(buf.getvalue().splitlines()) - 1} rows in {time.perf_counter() - t0:.2f}s -> {out / (name + '.csv')}")


if __name__ == "__main__":
    main()
