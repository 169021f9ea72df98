#!/usr/bin/env python3
"""Check that every bundled fixture corpus is valid against its schemas.

usage: check_fixtures.py VALIDATE_PY FIXTURES_DIR
"""

import json
import subprocess
import sys
from pathlib import Path


def catalog_files(catalog):
    files = []
    for line in catalog.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        _, location = line.split(None, 1)
        files.append(catalog.parent / location.strip())
    return files


def main():
    validate, root = sys.argv[1], Path(sys.argv[2])
    status = 0
    for spec in sorted(root.glob("*/fixture.json")):
        fixture = spec.parent
        desc = json.loads(spec.read_text(encoding="utf-8"))
        schemas = [fixture / s for s in desc["schemas"]]
        if "catalog" in desc:
            schemas += catalog_files(fixture / desc["catalog"])
        corpus = sorted((fixture / "corpus").glob("*.xml"))
        cmd = [sys.executable, validate]
        for s in schemas:
            cmd += ["--schema", str(s)]
        cmd += [str(c) for c in corpus]
        result = subprocess.run(cmd, capture_output=True, text=True)
        print(f"== {fixture.name}")
        print(result.stdout, end="")
        if result.returncode != 0:
            status = 1
    return status


if __name__ == "__main__":
    sys.exit(main())
