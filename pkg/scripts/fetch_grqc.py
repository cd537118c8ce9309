"""Download the SNAP Arxiv GR-QC collaboration network to data/CA-GrQc.txt.

Usage: python scripts/fetch_grqc.py [--url URL] [--out PATH]
"""
import argparse
import gzip
import sys
import urllib.request
from pathlib import Path

URL = "https://snap.stanford.edu/data/ca-GrQc.txt.gz"


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--url", default=URL)
    p.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data" / "CA-GrQc.txt"))
    args = p.parse_args(argv)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    try:
        with urllib.request.urlopen(args.url, timeout=60) as resp:
            raw = resp.read()
    except OSError as exc:
        print(f"download failed: {exc}", file=sys.stderr)
        return 1
    out.write_bytes(gzip.decompress(raw) if args.url.endswith(".gz") else raw)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
