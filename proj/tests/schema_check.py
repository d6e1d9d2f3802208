"""Validate the JSON documents the CLI emits against the shipped schemas and check reruns match."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

cli, schema_dir, data_dir = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])


def schema(name):
    return json.loads((schema_dir / f"{name}.schema.json").read_text())


def run(*args, ok=(0,)):
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    if proc.returncode not in ok:
        sys.exit(f"{' '.join(args)}: exit {proc.returncode}\n{proc.stderr}")
    return proc.stdout


def split_documents(text):
    decoder = json.JSONDecoder()
    docs, pos = [], 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        doc, pos = decoder.raw_decode(text, pos)
        docs.append(doc)
    return docs


checked = 0


def check(name, doc):
    global checked
    jsonschema.validate(doc, schema(name), format_checker=jsonschema.FormatChecker())
    checked += 1


for spec in ["C1", "S3", "D9", "prod(C2,A4)", "AGL1(5)"]:
    check("lattice", json.loads(run("lattice", spec, "--json")))
    check("classes", json.loads(run("classes", spec, "--json")))
    check("lift_report", json.loads(run("lift-report", spec, "--json")))
    check("lossless", json.loads(run("check-lossless", spec, ok=(0, 1))))

for doc in split_documents(run("count-ts", "--poset", str(data_dir / "chain1x1.json"), "--categorical", "--list"))[1:]:
    check("relation", doc)
for doc in split_documents(run("count-ts", "--group", "S3", "--equivariant", "--list"))[1:]:
    check("relation", doc)

with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as f:
    json.dump([[0, 1]], f)
check("relation", json.loads(run("closure", "S3", "--arrows", f.name)))
pathlib.Path(f.name).unlink()

check("poset", json.loads((data_dir / "chain1x1.json").read_text()))
check("conjecture", json.loads(run("sl2-conjecture", "--p", "5", "--samples", "10", "--seed", "3", "--json")))

# Schemas reject malformed documents.
bad = json.loads(run("lattice", "S3", "--json"))
del bad["leq"]
try:
    check("lattice", bad)
    sys.exit("lattice schema accepted a document without leq")
except jsonschema.ValidationError:
    pass

# Identical inputs and seeds give byte-identical output.
for args in [("sl2-conjecture", "--p", "5", "--samples", "10", "--seed", "3", "--json"), ("lift-report", "D9", "--json"),
             ("lattice", "prod(C2,A4)", "--dot")]:
    if run(*args) != run(*args):
        sys.exit(f"{' '.join(args)}: output differs between runs")

print(f"{checked} documents valid")
