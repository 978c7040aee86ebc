# Copyright 2026 The envlab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Runs the command-line tool into a scratch directory and validates every
JSON file it writes against the published schemas."""

import argparse
import copy
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def load_schema(directory, name):
    schema = json.loads((directory / name).read_text())
    jsonschema.Draft202012Validator.check_schema(schema)
    return jsonschema.Draft202012Validator(schema)


def envlab(cli, *args):
    result = subprocess.run([cli, *args], capture_output=True, text=True)
    return result.returncode, result.stdout, result.stderr


def produce(cli, out):
    runs = [
        ["run", "--experiment", "local", "--seed", "1"],
        ["run", "--experiment", "nonlocal", "--seed", "2", "--noise", "shot+jitter=0.02"],
        ["run", "--experiment", "local", "--seed", "3", "--noise", "none"],
    ]
    for args in runs:
        status, _, err = envlab(cli, *args, "--output-dir", str(out / args[2] / args[4]))
        if status not in (0, 1):
            sys.exit(f"run {args} failed: {err}")
    status, _, err = envlab(cli, "run", "--experiment", "local", "--seed", "4",
                            "--corrupt-environment-swap", "--no-companion",
                            "--output-dir", str(out / "corrupted"))
    if status != 1:
        sys.exit(f"corrupted run exited {status}: {err}")

    for stem, weights in [("equal", ["1/2", "1/2"]), ("trivial", ["1"]),
                          ("unequal", ["2/3", "1/3"]), ("nulls", ["1/4", "0", "3/4", "0"])]:
        status, _, err = envlab(cli, "prove", *weights, "--quiet", "--stem", f"proof_{stem}",
                                "--output-dir", str(out / "proofs"))
        if status != 0:
            sys.exit(f"prove {weights} failed: {err}")

    counts = out / "local" / "1" / "local" / "counts"
    (out / "tomo").mkdir()
    for record, method in [("full_original", "mle"), ("reduced_original", "linear")]:
        status, _, err = envlab(cli, "tomo", "--method", method, "--output",
                                str(out / "tomo" / f"{record}_{method}.json"),
                                str(counts / f"{record}.csv"))
        if status != 0:
            sys.exit(f"tomo {record} failed: {err}")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schemas", required=True, type=pathlib.Path)
    args = parser.parse_args()

    validators = {
        "report": load_schema(args.schemas, "report.schema.json"),
        "density": load_schema(args.schemas, "density.schema.json"),
        "proof": load_schema(args.schemas, "proof_chain.schema.json"),
    }

    def kind_of(path):
        if path.name == "report.json":
            return "report"
        if path.parent.name in ("density", "tomo"):
            return "density"
        if path.parent.name == "proofs":
            return "proof"
        return None

    failures = []
    checked = {name: 0 for name in validators}
    samples = {}
    with tempfile.TemporaryDirectory(prefix="envlab-schema-") as tmp:
        out = pathlib.Path(tmp)
        produce(args.cli, out)
        for path in sorted(out.rglob("*.json")):
            kind = kind_of(path)
            if kind is None:
                failures.append(f"{path.relative_to(out)}: no schema for this file")
                continue
            document = json.loads(path.read_text())
            samples.setdefault(kind, document)
            checked[kind] += 1
            for error in validators[kind].iter_errors(document):
                failures.append(f"{path.relative_to(out)}: {error.message}")

    for kind, count in checked.items():
        if count == 0:
            failures.append(f"no {kind} files were produced")

    # The schemas must reject damaged documents, not just accept everything.
    damaged = {
        "report": lambda d: d.pop("premise1"),
        "density": lambda d: d["matrix"][0].__setitem__(0, [0.5]),
        "proof": lambda d: d["conclusion"][0].__setitem__("probability", "0.5"),
    }
    for kind, damage in damaged.items():
        if kind in samples:
            document = copy.deepcopy(samples[kind])
            damage(document)
            if validators[kind].is_valid(document):
                failures.append(f"{kind} schema accepted a damaged document")

    for failure in failures:
        print(failure)
    print(", ".join(f"{count} {kind}" for kind, count in checked.items()) + " files checked")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
