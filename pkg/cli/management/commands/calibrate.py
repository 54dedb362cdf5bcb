"""Commande de calibration du registre des conventions."""

import json

from dolbeault.calibration import calibrate
from dolbeault.registry import registry_path

from cli.commands import ReportCommand
from cli.interpreter import EXIT_OK


class Command(ReportCommand):
    """Fixe chaque convention sur les identités de référence, puis gèle le registre."""

    help = "Calibre le registre des conventions et l'enregistre (--registry ou réglage par défaut)"

    def run(self, options):
        path = options.get("registry") or registry_path()
        registry = calibrate(path)
        if options["json"]:
            report = json.dumps(registry.as_dict(), sort_keys=True, ensure_ascii=False, indent=2)
        else:
            report = f"{registry}\nenregistré dans {path}"
        return report, EXIT_OK, ""
