"""Download G-set graphs in rudy format into data/gset/.

Usage::

    python3 scripts/fetch_gset.py G1 G43          # selected graphs
    python3 scripts/fetch_gset.py --all           # G1..G81

The files come from Yinyu Ye's G-set page. Tests never touch the network;
the G1 acceptance check reads ``$GSET_DIR/G1`` or ``data/gset/G1``.
"""

import argparse
import pathlib
import sys
import urllib.request

BASE = "https://web.stanford.edu/~yyye/yyye/Gset/"
DEST = pathlib.Path(__file__).resolve().parent.parent / "data" / "gset"


def fetch(name: str, dest: pathlib.Path, base: str = BASE) -> pathlib.Path:
    dest.mkdir(parents=True, exist_ok=True)
    out = dest / name
    with urllib.request.urlopen(base + name, timeout=60) as resp:
        out.write_bytes(resp.read())
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("names", nargs="*", help="graph names such as G1")
    ap.add_argument("--all", action="store_true", help="fetch G1..G81")
    ap.add_argument("--dest", type=pathlib.Path, default=DEST)
    ap.add_argument("--base-url", default=BASE)
    args = ap.parse_args(argv)
    names = [f"G{k}" for k in range(1, 82)] if args.all else args.names
    if not names:
        ap.error("name at least one graph or pass --all")
    status = 0
    for name in names:
        try:
            path = fetch(name, args.dest, args.base_url)
            print(f"{name}: {path}")
        except OSError as exc:
            print(f"{name}: download failed ({exc})", file=sys.stderr)
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
