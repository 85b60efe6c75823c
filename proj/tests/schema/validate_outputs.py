#!/usr/bin/env python3
"""Run the CLI end to end and validate every JSON document it writes.

usage: validate_outputs.py <hurstlab executable> <schema dir>
Exits 77 (skipped) when the jsonschema package is unavailable.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

try:
    import jsonschema
except ImportError:
    print("jsonschema not installed; skipping")
    sys.exit(77)


def run(cli, *args):
    proc = subprocess.run([cli, *map(str, args)], capture_output=True, text=True)
    if proc.returncode != 0:
        raise SystemExit(f"{' '.join(map(str, args))} failed ({proc.returncode}): {proc.stderr}")
    return proc.stdout


def main():
    cli, schema_dir = sys.argv[1], Path(sys.argv[2])
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    checked = 0

    def check(doc):
        nonlocal checked
        jsonschema.validate(doc, schemas[doc["kind"]])
        checked += 1

    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        for group, hurst, seed in (("anger", 0.35, 100), ("sad", 0.7, 200)):
            (tmp / group).mkdir()
            for i in range(12):
                run(cli, "synth", "fgn", "--hurst", hurst, "--n", 8192, "--seed", seed + i, "-o", tmp / group / f"{i:02}.txt")
        (tmp / "anger" / "bad.txt").write_text("not a number\n")

        check(json.loads(run(cli, "analyze", tmp / "anger" / "00.txt")))
        check(json.loads(run(cli, "analyze", tmp / "sad" / "00.txt", "--emd", "--bidirectional", "--q", -2)))

        for group in ("anger", "sad"):
            out = tmp / f"out_{group}"
            check(json.loads(run(cli, "corpus", tmp / group, "--out-dir", out, "--emotion", group, "--language", "en")))
            check(json.loads((out / "summary.json").read_text()))
            for report in (out / "reports").glob("*.json"):
                check(json.loads(report.read_text()))
            check(json.loads((out / f"baseline_{group}_en.json").read_text()))

        run(cli, "controls", "--normal", tmp / "sad", "--diseased", tmp / "anger", "-o", tmp / "controls.json")
        check(json.loads((tmp / "controls.json").read_text()))

        baselines = [json.loads((tmp / f"out_{g}" / f"baseline_{g}_en.json").read_text()) for g in ("anger", "sad")]
        (tmp / "baselines.json").write_text(json.dumps(baselines))
        for t in (1, 2):
            check(json.loads(run(cli, "classify", tmp / "anger" / "03.txt", "--baselines", tmp / "baselines.json",
                                 "--controls", tmp / "controls.json", "--history", tmp / "history.json",
                                 "--subject", "s1", "--timestamp", t)))
        check(json.loads((tmp / "history.json").read_text()))

    print(f"{checked} documents valid against {len(schemas)} schemas")


if __name__ == "__main__":
    main()
