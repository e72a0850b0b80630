"""Report assembly, on-disk cache and Markdown rendering.

Reports carry no wall-clock data, so identical inputs give identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
from collections import Counter
from pathlib import Path

from . import __version__
from .instances import load_instance
from .suites import STATUSES, SUITES, Budget, REFUTED

SCHEMA = "prohecke.report/1"
CACHE_ENV = "PROHECKE_CACHE_DIR"


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _cache_dir():
    d = os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _run_instance(suite, inst, budget, modules):
    """Checks of one suite on one instance, through the cache when enabled."""
    key_src = dumps({"suite": suite.id, "digest": inst.digest, "name": inst.name,
                     "budget": budget.as_dict(), "modules": modules or [], "version": __version__})
    key = hashlib.sha256(key_src.encode()).hexdigest()[:32]
    cache = _cache_dir()
    if cache is not None:
        path = cache / f"{suite.id}-{key}.json"
        if path.exists():
            return json.loads(path.read_text())
    checks = suite.runner(inst, budget, modules)
    # round trip so cold and warm runs hand back the same structure
    checks = json.loads(json.dumps(checks, sort_keys=True))
    if cache is not None:
        cache.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(checks, sort_keys=True))
        tmp.replace(path)
    return checks


def build_report(suite_id, instance_refs=None, budget=None, modules=None):
    if suite_id not in SUITES:
        raise KeyError(f"unknown suite {suite_id!r}; known: {', '.join(SUITES)}")
    suite = SUITES[suite_id]
    budget = budget or Budget()
    refs = list(instance_refs) if instance_refs else list(suite.instances)
    instances, checks = [], []
    for ref in refs:
        inst = load_instance(ref)
        instances.append({"name": inst.name, "digest": inst.digest, "kind": inst.kind})
        checks.extend(_run_instance(suite, inst, budget, modules))
    counts = Counter(c["status"] for c in checks)
    return {
        "schema": SCHEMA,
        "version": __version__,
        "suite": suite.id,
        "title": suite.title,
        "covers": list(suite.statements),
        "budget": budget.as_dict(),
        "modules": list(modules or []),
        "instances": instances,
        "checks": checks,
        "summary": {s: counts.get(s, 0) for s in STATUSES},
        "refuted": counts.get(REFUTED, 0) > 0,
    }


def _context(c):
    ctx = c.get("context") or {}
    return ", ".join(f"{k}={_short(v)}" for k, v in sorted(ctx.items()))


def _short(v):
    if isinstance(v, list):
        return "[" + ",".join(str(x) for x in v) + "]"
    return str(v)


def to_markdown(report):
    lines = [f"# {report['suite']}: {report['title']}", ""]
    lines.append("Statements covered:")
    lines.append("")
    for s in report["covers"]:
        lines.append(f"- {s}")
    lines.append("")
    lines.append("Instances: " + ", ".join(f"`{i['name']}` ({i['digest']})" for i in report["instances"]))
    lines.append("")
    summary = report["summary"]
    lines.append("| status | count |")
    lines.append("|---|---|")
    for s in STATUSES:
        lines.append(f"| {s} | {summary[s]} |")
    lines.append("")
    lines.append("| instance | check | context | status |")
    lines.append("|---|---|---|---|")
    for c in report["checks"]:
        lines.append(f"| {c['instance']} | {c['check']} | {_context(c)} | {c['status']} |")
    bad = [c for c in report["checks"] if c["status"] in (REFUTED, "inconclusive")]
    if bad:
        lines.append("")
        lines.append("## Refuted or inconclusive")
        lines.append("")
        for c in bad:
            info = c.get("witness", c.get("reason"))
            lines.append(f"- `{c['instance']}` {c['check']} ({_context(c)}): {c['status']}: "
                         f"`{json.dumps(info, sort_keys=True)}`")
    return "\n".join(lines) + "\n"
