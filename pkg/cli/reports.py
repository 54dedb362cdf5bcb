"""
Rapports des commandes : tableau texte (tabulate) ou JSON.

Le JSON est trié et ne contient ni date ni durée, pour que deux exécutions
identiques produisent exactement les mêmes octets.
"""

import json

from tabulate import tabulate

VERDICT_LABELS = {"PASS": "PASS", "FAIL": "FAIL", "ERROR": "ERREUR", None: ""}


def step_key(step):
    return f"{step.line:04d}"


def text_report(outcome, title=None):
    """Une ligne par instruction; les sorties multilignes restent dans leur cellule."""
    rows = [
        [step.line, step.statement, step.output, VERDICT_LABELS.get(step.verdict, step.verdict)]
        for step in outcome.steps
    ]
    table = tabulate(rows, headers=["ligne", "instruction", "résultat", "verdict"], tablefmt="simple")
    parts = [title] if title else []
    parts.append(table)
    parts.append(f"code de sortie: {outcome.exit_code}")
    return "\n".join(parts)


def json_report(outcome, title=None):
    data = {
        "exit_code": outcome.exit_code,
        "results": {step_key(step): step.as_dict() for step in outcome.steps},
    }
    if title:
        data["title"] = title
    if outcome.error:
        data["error"] = outcome.error
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


def harness_text(reports):
    """Tableau d'un lot de rapports de vérification, suivi du bilan."""
    rows = [row for report in reports for row in report.rows()]
    headers = ["vérification", "graine", "identité", "support", "verdict"]
    failed = [report.seed for report in reports if not report.passed]
    summary = f"{len(reports)} graine(s), {len(failed)} en échec"
    if failed:
        summary += f" (graines {', '.join(str(s) for s in failed)})"
    return "\n".join([tabulate(rows, headers=headers, tablefmt="simple"), summary])


def harness_json(reports):
    data = {
        "passed": all(report.passed for report in reports),
        "reports": [report.as_dict() for report in reports],
    }
    return json.dumps(data, sort_keys=True, ensure_ascii=False, indent=2)


def render(outcome, as_json=False, title=None):
    return json_report(outcome, title) if as_json else text_report(outcome, title)
