"""
Exécution des instructions d'un fichier de problèmes.

Une ``Session`` garde les anneaux déclarés et un espace de noms unique pour
les valeurs (polynômes, factorisations, objets, correspondances, formes).
Chaque instruction produit un ``StepResult``; le code de sortie agrège les
verdicts :

    0  toutes les assertions sont vérifiées
    3  au moins une assertion échoue (l'exécution continue)
    1  échec de calcul, ou dimension infinie là où une valeur finie est attendue
    2  erreur d'analyse, nom inconnu ou usage incorrect (l'exécution s'arrête)
"""

import logging
from dataclasses import dataclass, field

from dolbeault.corrections import check_mc
from dolbeault.dolforms import DolForm, polydisk
from dolbeault.exceptions import DolbeaultError
from dolbeault.harness import KINDS
from dolbeault.registry import resolve
from dolbeault.reports import FAIL, PASS, HarnessReport
from homology.algebra import end_algebra
from homology.complexes import ext, koszul_homology
from homology.exceptions import HomologyError
from homology.truncation import ext_dims_agree
from mfcore.exceptions import MatFactError
from mfcore.factorizations import (
    KoszulSpec,
    MatFact,
    dual_mf,
    grading_flip,
    koszul_factorization,
    make_matfact,
    matfact_equal,
    nilpotent_mf,
    rename_mf,
    sign_twist,
    tensor_mf,
)
from mfcore.functors import exclude_all, identity_mf, knorrer
from mfcore.serialization import serialize_matfact
from poly.exceptions import PolyError, PolySyntaxError, UnknownVariableError
from poly.modules import INFINITE
from poly.printing import format_poly
from poly.rings import Ring, Variable
from support.exceptions import SupportError
from support.varieties import (
    clean_status,
    correspondence_image,
    critical_ideal,
    graph_ideal,
    graph_restriction_check,
    milnor_number,
)
from twocat.correspondences import (
    compose_correspondences,
    correspondence_apply,
    curvings_differ_by_constant,
    identity_correspondence,
    legendre,
)
from twocat.exceptions import TwoCatError
from twocat.objects import Correspondence, LGObject

from cli.exceptions import ProblemFileError, ProblemSyntaxError, UndefinedNameError
from cli.problems import parse_problem
from cli.texts import infer_ring, parse_correspondence, parse_object

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_COMPUTATION = 1
EXIT_USAGE = 2
EXIT_ASSERTION = 3

ERROR = "ERROR"

# Ordre de priorité des codes de sortie.
_SEVERITY = {EXIT_OK: 0, EXIT_ASSERTION: 1, EXIT_COMPUTATION: 2, EXIT_USAGE: 3}

COMPUTATION_ERRORS = (
    PolyError,
    MatFactError,
    HomologyError,
    TwoCatError,
    SupportError,
    DolbeaultError,
)
USAGE_ERRORS = (ProblemFileError, PolySyntaxError, UnknownVariableError)

HARNESS_COMMANDS = {
    "verify-mc": "mc",
    "verify-corrections": "corrections",
    "verify-monoidal": "monoidal",
    "first-order": "first-order",
    "corollaries": "corollaries",
}


def dim_value(d):
    """Dimension sérialisable : entier, ou la chaîne ``INFINITE``."""
    return str(d) if d is INFINITE else int(d)


@dataclass(frozen=True)
class Value:
    kind: str
    value: object
    ring: Ring = None

    def describe(self):
        if self.kind == "poly":
            return format_poly(self.value)
        if self.kind == "matfact":
            M = self.value
            return f"factorisation de rang ({M.r0}, {M.r1}) sur {M.ring}"
        return str(self.value)


@dataclass
class StepResult:
    """Résultat d'une instruction : texte, données JSON et verdict éventuel."""

    line: int
    statement: str
    kind: str
    output: str = ""
    data: dict = field(default_factory=dict)
    verdict: str = None

    def as_dict(self):
        data = {"statement": self.statement, "kind": self.kind, "output": self.output}
        if self.data:
            data["data"] = self.data
        if self.verdict is not None:
            data["verdict"] = self.verdict
        return data


@dataclass
class RunOutcome:
    steps: list = field(default_factory=list)
    exit_code: int = EXIT_OK
    error: str = ""

    def escalate(self, code):
        if _SEVERITY[code] > _SEVERITY[self.exit_code]:
            self.exit_code = code


def _rows(text):
    """Lignes ``a, b | c, d`` d'une matrice."""
    if not text.strip():
        return []
    return [[entry.strip() for entry in row.split(",")] for row in text.split("|")]


def _names_option(value):
    return [name.strip() for name in str(value).split(",") if name.strip()]


class Session:
    """
    Environnement d'exécution d'un fichier de problèmes.

    Args:
        seed: graine par défaut des vérifications aléatoires
        registry: registre des conventions (défaut provisoire si ``None``)
        dim: dimension par défaut du polydisque des vérifications
    """

    def __init__(self, seed=0, registry=None, dim=2):
        self.seed = seed
        self.registry = resolve(registry)
        self.dim = dim
        self.rings = {}
        self.values = {}

    # Espace de noms

    def define(self, name, value, line=None):
        if name in self.values or name in self.rings:
            raise ProblemFileError(f"Nom déjà défini: {name}", line)
        self.values[name] = value
        return value

    def lookup(self, name, kinds=None, line=None):
        if name not in self.values:
            raise UndefinedNameError(f"Nom inconnu: {name}", line)
        value = self.values[name]
        if kinds and value.kind not in kinds:
            raise ProblemFileError(
                f"{name} est de type {value.kind}, attendu {' ou '.join(kinds)}", line
            )
        return value

    def ring(self, name, line=None):
        try:
            return self.rings[name]
        except KeyError:
            raise UndefinedNameError(f"Anneau inconnu: {name}", line) from None

    def _argument(self, stmt, index):
        if index >= len(stmt.args):
            raise ProblemFileError(
                f"{stmt.op}: argument {index + 1} manquant", stmt.line
            )
        return stmt.args[index]

    def _get(self, stmt, index, *kinds):
        arg = self._argument(stmt, index)
        if arg.kind != "name":
            raise ProblemFileError(f"{stmt.op}: nom attendu, reçu {arg}", stmt.line)
        return self.lookup(arg.value, kinds, stmt.line).value

    def _poly(self, stmt, index):
        """Polynôme nommé, ou chaîne dont l'anneau est déduit des identifiants."""
        arg = self._argument(stmt, index)
        if arg.kind == "str":
            ring = infer_ring(arg.value)
            return ring.parse(arg.value), ring
        value = self.lookup(arg.value, ("poly",), stmt.line)
        return value.value, value.ring

    def _text(self, stmt, index):
        arg = self._argument(stmt, index)
        if arg.kind == "name" and arg.value in self.values:
            value = self.values[arg.value]
            if value.kind == "poly":
                return format_poly(value.value)
        return str(arg.value)

    def _int(self, stmt, index):
        arg = self._argument(stmt, index)
        if arg.kind != "int":
            raise ProblemFileError(f"{stmt.op}: entier attendu, reçu {arg}", stmt.line)
        return arg.value

    # Définitions

    def _let_tensor(self, stmt):
        return tensor_mf(self._get(stmt, 0, "matfact"), self._get(stmt, 1, "matfact"))

    def _let_dual(self, stmt):
        return dual_mf(self._get(stmt, 0, "matfact"))

    def _let_flip(self, stmt):
        return grading_flip(self._get(stmt, 0, "matfact"))

    def _let_twist(self, stmt):
        return sign_twist(self._get(stmt, 0, "matfact"))

    def _let_knorrer(self, stmt):
        names = _names_option(stmt.options.get("names", "y1,y2"))
        return knorrer(self._get(stmt, 0, "matfact"), tuple(names))

    def _let_exclude(self, stmt):
        M = self._get(stmt, 0, "matfact")
        names = [str(a.value) for a in stmt.args[1:]]
        M, remaining = exclude_all(M, names)
        if remaining:
            logger.warning(f"Variables non exclues (ligne {stmt.line}): {remaining}")
        return M

    def _let_identity(self, stmt):
        ring = self.ring(str(self._argument(stmt, 0).value), stmt.line)
        W = ring.parse(self._text(stmt, 1))
        names = _names_option(stmt.options["names"]) if "names" in stmt.options else None
        return identity_mf(ring, W, names)

    def _let_nilpotent(self, stmt):
        return nilpotent_mf(self._int(stmt, 0))

    def _let_rename(self, stmt):
        mapping = {key: str(value) for key, value in stmt.options.items()}
        return rename_mf(self._get(stmt, 0, "matfact"), mapping)

    def _let_object(self, stmt):
        return parse_object(self._text(stmt, 0))

    def _let_correspondence(self, stmt):
        return parse_correspondence(self._text(stmt, 0))

    def _let_legendre(self, stmt):
        o = self._get(stmt, 0, "object")
        if "target" not in stmt.options:
            raise ProblemFileError("legendre: option target manquante", stmt.line)
        return legendre(o, _names_option(stmt.options["target"]), int(stmt.options.get("sign", 1)))

    def _let_compose(self, stmt):
        return compose_correspondences(
            self._get(stmt, 0, "correspondence"), self._get(stmt, 1, "correspondence")
        )

    def _let_apply(self, stmt):
        return correspondence_apply(
            self._get(stmt, 0, "correspondence"), self._get(stmt, 1, "object")
        )

    def _let_identity_corr(self, stmt):
        return identity_correspondence(_names_option(self._text(stmt, 0)))

    def _let_dolform(self, stmt):
        space = polydisk(self._int(stmt, 0), tagged=bool(stmt.options.get("tagged", 0)))
        form = space.parse(self._text(stmt, 1))
        if "db" in stmt.options:
            form = form * space.db(int(stmt.options["db"]) - 1)
        return form

    def _let_sum(self, stmt):
        first = self.lookup(self._argument(stmt, 0).value, ("poly", "dolform"), stmt.line)
        total = first.value
        for index in range(1, len(stmt.args)):
            total = total + self._get(stmt, index, first.kind)
        return Value(first.kind, total, first.ring)

    LET_OPS = {
        "tensor": _let_tensor,
        "dual": _let_dual,
        "flip": _let_flip,
        "twist": _let_twist,
        "knorrer": _let_knorrer,
        "exclude": _let_exclude,
        "identity": _let_identity,
        "nilpotent": _let_nilpotent,
        "rename": _let_rename,
        "object": _let_object,
        "correspondence": _let_correspondence,
        "legendre": _let_legendre,
        "compose": _let_compose,
        "apply": _let_apply,
        "identity-corr": _let_identity_corr,
        "dolform": _let_dolform,
        "sum": _let_sum,
    }

    @staticmethod
    def wrap(value):
        """Type d'une valeur calculée."""
        if isinstance(value, MatFact):
            return Value("matfact", value, value.ring)
        if isinstance(value, LGObject):
            return Value("object", value, value.ring)
        if isinstance(value, Correspondence):
            return Value("correspondence", value, value.ring)
        if isinstance(value, DolForm):
            return Value("dolform", value)
        return Value("poly", value)

    # Commandes

    def _cmd_ext(self, stmt):
        result = ext(self._get(stmt, 0, "matfact"), self._get(stmt, 1, "matfact"))
        even, odd = (dim_value(d) for d in result.dims)
        return f"Ext: pair {even}, impair {odd}", {"even": even, "odd": odd}, None

    def _cmd_ext_agree(self, stmt):
        agree, dims, oracle = ext_dims_agree(
            self._get(stmt, 0, "matfact"), self._get(stmt, 1, "matfact")
        )
        data = {
            "groebner": [dim_value(d) for d in dims],
            "truncation": [dim_value(d) for d in oracle],
        }
        output = f"Gröbner {data['groebner']}, troncature {data['truncation']}"
        return output, data, PASS if agree else FAIL

    def _cmd_end_algebra(self, stmt):
        algebra = end_algebra(self._get(stmt, 0, "matfact"))
        data = {
            "dimension": algebra.dimension,
            "basis": list(algebra.labels),
            "unital": algebra.is_unital(),
            "associative": algebra.is_associative(),
        }
        return algebra.format_table(), data, None

    def _cmd_show(self, stmt):
        arg = self._argument(stmt, 0)
        value = self.lookup(arg.value, line=stmt.line)
        if value.kind == "matfact":
            return serialize_matfact(value.value), {}, None
        return value.describe(), {}, None

    def _cmd_milnor(self, stmt):
        W, ring = self._poly(stmt, 0)
        mu = dim_value(milnor_number(W, ring))
        return str(mu), {"milnor": mu}, None

    def _cmd_crit(self, stmt):
        W, ring = self._poly(stmt, 0)
        ideal = critical_ideal(W, ring)
        return str(ideal), {"ideal": str(ideal)}, None

    def _cmd_clean(self, stmt):
        W, ring = self._poly(stmt, 0)
        status = str(clean_status(W, ring))
        return status, {"status": status}, None

    def _cmd_graph(self, stmt):
        W, ring = self._poly(stmt, 0)
        graph = graph_ideal(W, ring)
        return str(graph), {"ideal": str(graph), "fiber": list(graph.fiber)}, None

    def _cmd_graph_check(self, stmt):
        W, ring = self._poly(stmt, 0)
        ok = graph_restriction_check(W, ring)
        return "graphe ∩ section nulle = lieu critique" if ok else "restriction différente", {}, PASS if ok else FAIL

    def _cmd_image(self, stmt):
        W12, ring12 = self._poly(stmt, 0)
        W, ring = self._poly(stmt, 1)
        flip = bool(stmt.options.get("flip", 0))
        image = correspondence_image(graph_ideal(W12, ring12), graph_ideal(W, ring), flip)
        return str(image), {"ideal": str(image), "base": list(image.base)}, None

    def _cmd_koszul_homology(self, stmt):
        ring = self.ring(str(self._argument(stmt, 0).value), stmt.line)
        p = [ring.parse(self._text(stmt, k)) for k in range(1, len(stmt.args))]
        even, odd = (dim_value(d) for d in koszul_homology(p, ring))
        return f"H: pair {even}, impair {odd}", {"even": even, "odd": odd}, None

    def _cmd_equal(self, stmt):
        same = matfact_equal(self._get(stmt, 0, "matfact"), self._get(stmt, 1, "matfact"))
        return "identiques" if same else "différentes", {}, PASS if same else FAIL

    def _cmd_differ_by_constant(self, stmt):
        same = curvings_differ_by_constant(
            self._get(stmt, 0, "object"), self._get(stmt, 1, "object")
        )
        return "courbures égales à une constante près" if same else "courbures différentes", {}, PASS if same else FAIL

    def _cmd_check_mc(self, stmt):
        report = HarnessReport("maurer_cartan", registry=self.registry.as_dict())
        report.add(check_mc(self._get(stmt, 0, "dolform"), self.registry))
        return report.as_table(), report.as_dict(), report.verdict

    def harness_report(self, op, options):
        """Rapport d'une vérification aléatoire pour une graine."""
        kind = HARNESS_COMMANDS[op]
        seed = int(options.get("seed", self.seed))
        kwargs = {"n": int(options.get("dim", self.dim)), "registry": self.registry}
        if kind == "monoidal":
            kwargs["level"] = int(options.get("level", 1))
        if kind == "corrections":
            kwargs["curved"] = bool(options.get("curved", 0))
        return KINDS[kind](seed, **kwargs)

    def _cmd_harness(self, stmt):
        report = self.harness_report(stmt.op, stmt.options)
        return report.as_table(), report.as_dict(), report.verdict

    COMMANDS = {
        "ext": _cmd_ext,
        "ext-agree": _cmd_ext_agree,
        "end-algebra": _cmd_end_algebra,
        "show": _cmd_show,
        "milnor": _cmd_milnor,
        "crit": _cmd_crit,
        "clean": _cmd_clean,
        "graph": _cmd_graph,
        "graph-check": _cmd_graph_check,
        "image": _cmd_image,
        "koszul-homology": _cmd_koszul_homology,
        "equal": _cmd_equal,
        "differ-by-constant": _cmd_differ_by_constant,
        "check-mc": _cmd_check_mc,
        **dict.fromkeys(HARNESS_COMMANDS, _cmd_harness),
    }

    # Instructions

    def command(self, stmt):
        try:
            handler = self.COMMANDS[stmt.op]
        except KeyError:
            raise ProblemFileError(f"Commande inconnue: {stmt.op}", stmt.line) from None
        return handler(self, stmt)

    def _declare_ring(self, stmt):
        if stmt.name in self.rings or stmt.name in self.values:
            raise ProblemFileError(f"Nom déjà défini: {stmt.name}", stmt.line)
        ring = Ring([Variable(name, cohdeg) for name, cohdeg in stmt.fields["variables"]])
        self.rings[stmt.name] = ring
        return StepResult(stmt.line, stmt.text, stmt.kind, str(ring))

    def _define(self, stmt):
        fields = stmt.fields
        if stmt.kind == "poly":
            ring = self.ring(fields["ring"], stmt.line)
            value = Value("poly", ring.parse(fields["expr"]), ring)
        elif stmt.kind == "koszul":
            ring = self.ring(fields["ring"], stmt.line)
            spec = KoszulSpec(
                tuple(ring.parse(p) for p in fields["p"]),
                tuple(ring.parse(q) for q in fields["q"]),
            )
            value = self.wrap(koszul_factorization(spec, ring))
        elif stmt.kind == "matfact":
            ring = self.ring(fields["ring"], stmt.line)
            value = self.wrap(
                make_matfact(ring, fields["W"], _rows(fields["d0"]), _rows(fields["d1"]))
            )
        else:
            try:
                handler = self.LET_OPS[stmt.op]
            except KeyError:
                raise ProblemFileError(f"Opération inconnue: {stmt.op}", stmt.line) from None
            value = handler(self, stmt)
            if not isinstance(value, Value):
                value = self.wrap(value)
        self.define(stmt.name, value, stmt.line)
        return StepResult(stmt.line, stmt.text, stmt.kind, value.describe())

    def _assert_dims(self, stmt, actual, expected):
        actual = tuple(dim_value(d) for d in actual)
        expected = tuple(dim_value(d) for d in expected)
        data = {"actual": list(actual), "expected": list(expected)}
        if any(a == str(INFINITE) and e != str(INFINITE) for a, e in zip(actual, expected)):
            verdict = ERROR
        else:
            verdict = PASS if actual == expected else FAIL
        output = f"obtenu {actual}, attendu {expected}"
        return StepResult(stmt.line, stmt.text, stmt.kind, output, data, verdict)

    def _assert(self, stmt):
        if stmt.kind == "assert_ext":
            left, right = (self.lookup(n, ("matfact",), stmt.line).value for n in stmt.args)
            return self._assert_dims(stmt, ext(left, right).dims, stmt.fields["expected"])
        if stmt.kind == "assert_milnor":
            value = self.lookup(stmt.name, ("poly",), stmt.line)
            mu = milnor_number(value.value, value.ring)
            return self._assert_dims(stmt, (mu,), (stmt.fields["expected"],))
        output, data, verdict = self.command(stmt)
        if verdict is None:
            raise ProblemFileError(f"{stmt.op} n'est pas une vérification", stmt.line)
        return StepResult(stmt.line, stmt.text, stmt.kind, output, data, verdict)

    def execute(self, stmt):
        """Exécute une instruction et retourne son ``StepResult``."""
        if stmt.kind == "ring":
            return self._declare_ring(stmt)
        if stmt.kind in ("poly", "koszul", "matfact", "let"):
            return self._define(stmt)
        if stmt.kind == "cmd":
            output, data, verdict = self.command(stmt)
            return StepResult(stmt.line, stmt.text, stmt.kind, output, data, verdict)
        return self._assert(stmt)

    def run(self, statements):
        """
        Exécute les instructions dans l'ordre.

        Une assertion en échec n'arrête pas l'exécution; une erreur d'usage ou
        de calcul l'arrête après avoir été consignée.
        """
        outcome = RunOutcome()
        for stmt in statements:
            try:
                step = self.execute(stmt)
            except USAGE_ERRORS as e:
                logger.error(f"Ligne {stmt.line}: {e}")
                outcome.steps.append(StepResult(stmt.line, stmt.text, stmt.kind, str(e), verdict=ERROR))
                outcome.error = str(e)
                outcome.escalate(EXIT_USAGE)
                break
            except COMPUTATION_ERRORS as e:
                logger.error(f"Ligne {stmt.line}: échec du calcul: {e}")
                outcome.steps.append(StepResult(stmt.line, stmt.text, stmt.kind, str(e), verdict=ERROR))
                outcome.error = str(e)
                outcome.escalate(EXIT_COMPUTATION)
                break
            outcome.steps.append(step)
            if step.verdict == FAIL and stmt.kind.startswith("assert"):
                outcome.escalate(EXIT_ASSERTION)
            elif step.verdict == ERROR:
                outcome.error = step.output
                outcome.escalate(EXIT_COMPUTATION)
        logger.info(f"Fichier exécuté: {len(outcome.steps)} instruction(s), code {outcome.exit_code}")
        return outcome


def run_text(text, seed=0, registry=None):
    """Analyse puis exécute un fichier de problèmes."""
    try:
        statements = parse_problem(text)
    except ProblemSyntaxError as e:
        logger.error(str(e))
        outcome = RunOutcome(error=str(e))
        outcome.steps.append(StepResult(e.line, "", "syntax", str(e), verdict=ERROR))
        outcome.escalate(EXIT_USAGE)
        return outcome
    return Session(seed=seed, registry=registry).run(statements)
