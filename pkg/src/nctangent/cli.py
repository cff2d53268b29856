"""Scenario-driven verification commands.

Scenarios are JSON files naming an algebra model and optional covering,
partition, action, and connection sections.  Every command loads and
fully validates the scenario, runs one family of checks, prints a JSON
report with one record per check, and exits 0 when everything passed,
1 when some check failed, and 2 on usage or scenario errors.
"""

import json
import random
import time
from fractions import Fraction

import click

from nctangent.algebras import (
    AlgebraError,
    direct_sum,
    make_function_algebra,
    make_matrix_algebra,
    make_moyal_truncation,
)
from nctangent.connection import (
    ConnectionCoefficients,
    coefficient_failures,
    curvature_cross_check,
    random_connection,
    verify_connection_axioms,
)
from nctangent.covering import Covering, ideal_from_declaration, verify_covering
from nctangent.forms import (
    FormN,
    d_locality_check,
    differential_of,
    duality_rank,
    glued_basis,
    kappa_basis,
    koszul_d,
    wedge_compat_check,
)
from nctangent.minkowski import PBWElement, star_multiply
from nctangent.minkowski import hopf_axiom_check
from nctangent.partition import (
    Partition,
    _block_sizes,
    reconstruction_check,
    verify_adapted,
    verify_partition,
)
from nctangent.scalars import Scalar, vec_add, vec_scale, zero_vec
from nctangent.tangent import (
    ActionAssignment,
    canonical_inner_model,
    decompose,
    glue,
    leibniz_failures,
    local_derivation,
)

REPORT_VERSION = "1"


class ScenarioError(click.UsageError):
    """Scenario file is missing, malformed, or fails validation."""


def _parse_scalar(value, where):
    try:
        return Scalar.parse(str(value))
    except (ValueError, ZeroDivisionError) as err:
        raise ScenarioError("bad scalar literal in %s: %s" % (where, err))


def _parse_vec(items, dim, where):
    if not isinstance(items, (list, tuple)) or len(items) != dim:
        raise ScenarioError(
            "%s must be a list of %d scalar literals" % (where, dim)
        )
    return tuple(_parse_scalar(x, where) for x in items)


def _parse_ideal_decl(A, decl):
    """Vector-valued declarations carry scalar literals that need parsing."""
    if isinstance(decl, dict) and decl.get("type") in ("span", "generators"):
        out = dict(decl)
        out["vectors"] = [
            _parse_vec(v, A.dim, "covering ideal vector")
            for v in decl.get("vectors", [])
        ]
        return out
    return decl


def _build_algebra(spec):
    if not isinstance(spec, dict) or "model" not in spec:
        raise ScenarioError("algebra section needs a 'model' field")
    model = spec["model"]
    try:
        if model == "matrix":
            return make_matrix_algebra(int(spec["n"]))
        if model == "moyal":
            return make_moyal_truncation(int(spec["N"]))
        if model == "function":
            return make_function_algebra(int(spec["points"]))
        if model == "sum":
            terms = spec.get("terms", [])
            if len(terms) < 2:
                raise ScenarioError("sum model needs at least two terms")
            out = _build_algebra(terms[0])
            for term in terms[1:]:
                out = direct_sum(out, _build_algebra(term))
            return out
    except (KeyError, TypeError, ValueError) as err:
        raise ScenarioError("bad algebra section: %s" % err)
    raise ScenarioError("unknown algebra model %r" % model)


def _diagonal_zetas(A):
    model = A.model
    if model and model[0] in ("matrix", "moyal"):
        n = model[1]
        return [A.basis_vector(m * n + m) for m in range(n)]
    if model and model[0] == "function":
        return [A.basis_vector(k) for k in range(A.dim)]
    raise ScenarioError("diagonal partition needs a matrix-like model")


def _block_zetas(A):
    try:
        blocks = _block_sizes(A.model)
    except AlgebraError as err:
        raise ScenarioError("block partition: %s" % err)
    zetas = []
    offset = 0
    for kind, size in blocks:
        z = zero_vec(A.dim)
        if kind == "matrix":
            for m in range(size):
                z = vec_add(z, A.basis_vector(offset + m * size + m))
            offset += size * size
        else:
            z = A.basis_vector(offset)
            offset += 1
        zetas.append(z)
    return zetas


def _build_partition(A, spec):
    try:
        if isinstance(spec, dict) and "zetas" in spec:
            zetas = [
                _parse_vec(z, A.dim, "partition zeta %d" % k)
                for k, z in enumerate(spec["zetas"])
            ]
            return Partition.from_zetas(A, zetas)
        if isinstance(spec, dict) and spec.get("type") == "diagonal":
            return Partition.from_zetas(A, _diagonal_zetas(A))
        if isinstance(spec, dict) and spec.get("type") == "blocks":
            return Partition.from_zetas(A, _block_zetas(A))
    except AlgebraError as err:
        raise ScenarioError("bad partition section: %s" % err)
    raise ScenarioError(
        "partition section needs 'zetas' or type 'diagonal'/'blocks'"
    )


def _build_action(algebra, spec, d, kappa, where):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ScenarioError("%s needs a 'type' field" % where)
    try:
        if spec["type"] == "canonical":
            return canonical_inner_model(
                int(spec["N"]), d, kappa, algebra=algebra
            )
        if spec["type"] == "inner":
            gens = [
                _parse_vec(g, algebra.dim, where)
                for g in spec["generators"]
            ]
            return ActionAssignment.from_inner(algebra, d, kappa, gens)
    except (KeyError, TypeError, ValueError) as err:
        raise ScenarioError("bad %s: %s" % (where, err))
    raise ScenarioError("unknown action type %r in %s" % (spec["type"], where))


def _connection_entry(value, A, where):
    if isinstance(value, (list, tuple)):
        return _parse_vec(value, A.dim, where)
    return vec_scale(_parse_scalar(value, where), A.unit)


def _build_connection(assign, spec, rng):
    A = assign.algebra
    n = assign.d + 1
    kind = spec.get("type") if isinstance(spec, dict) else None
    if kind == "zero":
        return ConnectionCoefficients.zero(assign)
    if kind == "constant":
        value = vec_scale(
            _parse_scalar(spec.get("value", "i"), "connection value"), A.unit
        )
        return ConnectionCoefficients(
            assign, [[[value] * n] * n] * n, check=False
        )
    if kind == "seeded":
        return random_connection(assign, rng)
    if isinstance(spec, dict) and "grid" in spec:
        grid = spec["grid"]
        if len(grid) != n:
            raise ScenarioError("connection grid must be (d+1) cubed")
        built = []
        for mu, plane in enumerate(grid):
            rows = []
            for nu, row in enumerate(plane):
                rows.append(
                    [
                        _connection_entry(
                            entry, A, "connection grid (%d,%d,%d)" % (mu, nu, lam)
                        )
                        for lam, entry in enumerate(row)
                    ]
                )
            built.append(rows)
        return ConnectionCoefficients(assign, built, check=False)
    raise ScenarioError(
        "connection section needs type 'zero'/'constant'/'seeded' or a grid"
    )


class Scenario:
    __slots__ = (
        "kappa",
        "d",
        "max_degree",
        "algebra",
        "covering",
        "partition",
        "action",
        "actions",
        "connection_spec",
    )


def load_scenario(path):
    try:
        with open(path) as handle:
            data = json.load(handle)
    except OSError as err:
        raise ScenarioError("cannot read scenario: %s" % err)
    except json.JSONDecodeError as err:
        raise ScenarioError("scenario is not valid JSON: %s" % err)
    if not isinstance(data, dict):
        raise ScenarioError("scenario must be a JSON object")
    scn = Scenario()
    try:
        scn.kappa = Fraction(str(data.get("kappa", "1")))
    except (ValueError, ZeroDivisionError) as err:
        raise ScenarioError("bad kappa: %s" % err)
    if scn.kappa <= 0:
        raise ScenarioError("kappa must be positive")
    try:
        scn.d = int(data.get("d", 1))
    except (TypeError, ValueError):
        raise ScenarioError("d must be an integer")
    if scn.d < 1:
        raise ScenarioError("d must be at least 1")
    scn.max_degree = data.get("max_degree")
    if scn.max_degree is not None:
        scn.max_degree = int(scn.max_degree)
    scn.algebra = None
    scn.covering = None
    scn.partition = None
    scn.action = None
    scn.actions = None
    scn.connection_spec = data.get("connection")
    if "algebra" in data:
        scn.algebra = _build_algebra(data["algebra"])
    if "covering" in data:
        if scn.algebra is None:
            raise ScenarioError("covering section needs an algebra section")
        spec = data["covering"]
        if not isinstance(spec, dict) or "ideals" not in spec:
            raise ScenarioError("covering section needs an 'ideals' list")
        try:
            ideals = [
                ideal_from_declaration(scn.algebra, _parse_ideal_decl(scn.algebra, decl))
                for decl in spec["ideals"]
            ]
            scn.covering = Covering(scn.algebra, ideals)
        except AlgebraError as err:
            raise ScenarioError("bad covering section: %s" % err)
    if "partition" in data:
        if scn.algebra is None:
            raise ScenarioError("partition section needs an algebra section")
        scn.partition = _build_partition(scn.algebra, data["partition"])
    if "action" in data:
        if scn.algebra is None:
            raise ScenarioError("action section needs an algebra section")
        scn.action = _build_action(
            scn.algebra, data["action"], scn.d, scn.kappa, "action section"
        )
    if "actions" in data:
        if scn.covering is None:
            raise ScenarioError("actions section needs a covering section")
        specs = data["actions"]
        if len(specs) != scn.covering.size:
            raise ScenarioError("need one action per chart")
        scn.actions = [
            _build_action(
                scn.covering.chart(alpha),
                spec,
                scn.d,
                scn.kappa,
                "chart %d action" % alpha,
            )
            for alpha, spec in enumerate(specs)
        ]
    if scn.connection_spec is not None and scn.action is None:
        raise ScenarioError("connection section needs an action section")
    return scn


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return str(obj)


def _need(scn, field, command):
    if getattr(scn, field) is None:
        raise ScenarioError(
            "scenario lacks the %r section required by %s" % (field, command)
        )


class Recorder:
    def __init__(self):
        self.records = []

    def run(self, check_id, thunk):
        """thunk returns a witness (truthy = fail) or None."""
        start = time.monotonic()
        witness = thunk()
        millis = int((time.monotonic() - start) * 1000)
        record = {
            "id": check_id,
            "status": "fail" if witness else "pass",
            "millis": millis,
        }
        if witness:
            record["witness"] = _jsonable(witness)
        self.records.append(record)


def _first(items):
    return items[0] if items else None


def _check_hopf(scn, rec, seed, max_degree):
    degree = max_degree or scn.max_degree or 3
    cache = {}

    def sweep():
        if "failures" not in cache:
            cache["failures"] = hopf_axiom_check(scn.d, scn.kappa, degree)
        return cache["failures"]

    def family_witness(family):
        hits = []
        for name, key in sweep():
            bucket = "antipode" if name.startswith("antipode") else name
            if bucket == family:
                hits.append((name, str(key)))
        return _first(hits)

    for family in ("antipode", "coassociativity", "counit"):
        rec.run("hopf:%s" % family, lambda f=family: family_witness(f))

    def commutators():
        kappa = scn.kappa
        for j in range(1, scn.d + 1):
            p0 = PBWElement.generator(scn.d, kappa, 0)
            pj = PBWElement.generator(scn.d, kappa, j)
            comm = star_multiply(p0, pj) - star_multiply(pj, p0)
            want = pj.scale(Scalar(0, Fraction(1) / kappa))
            if comm != want:
                return ("time-space", j)
            for k in range(j + 1, scn.d + 1):
                pk = PBWElement.generator(scn.d, kappa, k)
                if not (star_multiply(pj, pk) - star_multiply(pk, pj)).is_zero():
                    return ("space-space", j, k)
        return None

    rec.run("hopf:commutators", commutators)


def _check_partition(scn, rec, seed):
    report = verify_partition(scn.algebra, scn.partition)
    for name, ok, witness in report:
        rec.run(
            "partition:%s" % name,
            lambda ok=ok, witness=witness: None if ok else witness,
        )
    if scn.covering is not None:
        rec.run(
            "partition:reconstruction",
            lambda: reconstruction_check(scn.partition, scn.covering),
        )


_COVERING_LAWS = (
    "homomorphism",
    "joint-injectivity",
    "overlap-diagram",
    "section",
    "star-compatibility",
    "unit",
)


def _check_covering(scn, rec, seed):
    failures = verify_covering(scn.covering)
    for law in _COVERING_LAWS:
        hits = [w for name, w in failures if name == law]
        rec.run("covering:%s" % law, lambda h=hits: _first(h))


def _check_adapted(scn, rec, seed):
    for variant in ("closure", "literal"):
        rows = verify_adapted(scn.partition, scn.covering, variant=variant)
        bad = [row for row in rows if not row[1]]
        rec.run("adapted:%s" % variant, lambda b=bad: _first(b))


def _chart_samples(assign, rng, count):
    """Seeded derivations with scalar coefficients on one chart."""
    A = assign.algebra
    out = []
    for _ in range(count):
        coeffs = [
            vec_scale(
                Scalar(Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))),
                A.unit,
            )
            for _ in range(assign.d + 1)
        ]
        out.append(local_derivation(assign, coeffs))
    return out


def _check_glue(scn, rec, seed):
    cov, P = scn.covering, scn.partition
    rng = random.Random(seed)
    gbasis, _ = glued_basis(cov, P, scn.actions)

    def leibniz():
        for mu, op in enumerate(gbasis.operators):
            bad = leibniz_failures(scn.algebra, op)
            if bad:
                return (mu, bad[0])
        return None

    rec.run("glue:leibniz", leibniz)

    def roundtrip():
        for _ in range(3):
            locals_ = [
                _chart_samples(assign, rng, 1)[0] for assign in scn.actions
            ]
            X = glue(cov, P, locals_)
            for alpha, local in enumerate(locals_):
                if decompose(X, alpha) != local.coefficients:
                    return ("chart", alpha)
        return None

    rec.run("glue:roundtrip", roundtrip)


def _random_element(rng, dim, span=2):
    return tuple(
        Scalar(Fraction(rng.randint(-span, span)), Fraction(rng.randint(-span, span)))
        for _ in range(dim)
    )


def _random_form(rng, basis, degree):
    from itertools import combinations

    entries = {}
    for key in combinations(range(basis.rank), degree):
        entries[key] = _random_element(rng, basis.algebra.dim)
    return FormN(basis, degree, entries)


def _check_forms(scn, rec, seed):
    rng = random.Random(seed)
    if scn.actions is not None:
        gbasis, locals_ = glued_basis(scn.covering, scn.partition, scn.actions)
        bases = [gbasis]
    elif scn.action is not None:
        gbasis, locals_ = kappa_basis(scn.action), None
        bases = [gbasis]
    else:
        raise ScenarioError(
            "scenario lacks the action sections required by forms-check"
        )

    def dd_zero():
        for basis in bases:
            for _ in range(10):
                a = _random_element(rng, basis.algebra.dim)
                if not koszul_d(differential_of(basis, a)).is_zero():
                    return ("zero-form",)
            for _ in range(10):
                rho = _random_form(rng, basis, 1)
                if not koszul_d(koszul_d(rho)).is_zero():
                    return ("one-form",)
        return None

    rec.run("forms:dd-zero", dd_zero)

    def duality():
        got, needed = duality_rank(gbasis)
        return None if got == needed else (got, needed)

    rec.run("forms:duality", duality)

    if scn.actions is None:
        return

    def wedge_compat():
        rho = _random_form(rng, gbasis, 1)
        eta = _random_form(rng, gbasis, 1)
        a = _random_form(rng, gbasis, 0)
        for alpha in range(scn.covering.size):
            local = locals_[alpha]
            for left, right in ((rho, eta), (a, rho)):
                bad = wedge_compat_check(
                    left, right, scn.covering, scn.partition, alpha, local
                )
                if bad:
                    return (alpha, bad[0])
        return None

    rec.run("forms:wedge-compat", wedge_compat)

    def locality():
        for alpha in range(scn.covering.size):
            local = locals_[alpha]
            for degree in (0, 1):
                rho = _random_form(rng, gbasis, degree)
                bad = d_locality_check(rho, scn.covering, alpha, local)
                if bad:
                    return (alpha, degree, bad[0])
        return None

    rec.run("forms:d-locality", locality)


def _check_curvature(scn, rec, seed):
    rng = random.Random(seed)
    if scn.connection_spec is None:
        raise ScenarioError(
            "scenario lacks the 'connection' section required by curvature"
        )
    gamma = _build_connection(scn.action, scn.connection_spec, rng)
    rec.run(
        "curvature:coefficients",
        lambda: _first(coefficient_failures(gamma)),
    )
    samples = [
        (X, Y, vec_scale(Scalar(1, 1), scn.action.algebra.unit))
        for X, Y in zip(
            _chart_samples(scn.action, rng, 3),
            _chart_samples(scn.action, rng, 3),
        )
    ]
    rec.run(
        "curvature:axioms",
        lambda: _first(verify_connection_axioms(gamma, samples)),
    )
    rec.run(
        "curvature:cross-check",
        lambda: _first(curvature_cross_check(gamma)),
    )


def _dispatch(command, scn, seed, max_degree):
    rec = Recorder()
    if command == "hopf-check":
        _check_hopf(scn, rec, seed, max_degree)
    elif command == "partition-check":
        _need(scn, "algebra", command)
        _need(scn, "partition", command)
        _check_partition(scn, rec, seed)
    elif command == "covering-check":
        _need(scn, "covering", command)
        _check_covering(scn, rec, seed)
    elif command == "adapted-check":
        _need(scn, "covering", command)
        _need(scn, "partition", command)
        _check_adapted(scn, rec, seed)
    elif command == "glue-derivations":
        _need(scn, "covering", command)
        _need(scn, "partition", command)
        _need(scn, "actions", command)
        _check_glue(scn, rec, seed)
    elif command == "forms-check":
        _check_forms(scn, rec, seed)
    elif command == "curvature":
        _need(scn, "action", command)
        _check_curvature(scn, rec, seed)
    elif command == "all":
        _check_hopf(scn, rec, seed, max_degree)
        if scn.partition is not None and scn.algebra is not None:
            _check_partition(scn, rec, seed)
        if scn.covering is not None:
            _check_covering(scn, rec, seed)
        if scn.covering is not None and scn.partition is not None:
            _check_adapted(scn, rec, seed)
        if scn.actions is not None and scn.partition is not None:
            _check_glue(scn, rec, seed)
        if scn.actions is not None or scn.action is not None:
            _check_forms(scn, rec, seed)
        if scn.connection_spec is not None:
            _check_curvature(scn, rec, seed)
    else:
        raise ScenarioError("unknown command %r" % command)
    return rec.records


def _run(command, scenario, seed, max_degree, out):
    scn = load_scenario(scenario)
    records = _dispatch(command, scn, seed, max_degree)
    records.sort(key=lambda r: r["id"])
    report = {"version": REPORT_VERSION, "seed": seed, "checks": records}
    text = json.dumps(report, indent=2)
    click.echo(text)
    if out:
        with open(out, "w") as handle:
            handle.write(text + "\n")
    if any(r["status"] != "pass" for r in records):
        raise SystemExit(1)


def _common(func):
    for option in (
        click.option(
            "--out",
            default=None,
            type=click.Path(),
            help="Also write the report here.",
        ),
        click.option("--max-degree", default=None, type=int),
        click.option("--seed", default=0, show_default=True, type=int),
        click.option(
            "--scenario",
            required=True,
            type=click.Path(),
            help="Path to the scenario JSON file.",
        ),
    ):
        func = option(func)
    return func


@click.group()
def main():
    """Exact verification of the deformed tangent-space machinery."""


@main.command("hopf-check")
@_common
def hopf_check(scenario, seed, max_degree, out):
    """Coalgebra axioms and defining commutators of the deformed space."""
    _run("hopf-check", scenario, seed, max_degree, out)


@main.command("partition-check")
@_common
def partition_check(scenario, seed, max_degree, out):
    """Partition-of-unity conditions, plus reconstruction when a covering
    is present."""
    _run("partition-check", scenario, seed, max_degree, out)


@main.command("covering-check")
@_common
def covering_check(scenario, seed, max_degree, out):
    """Covering laws: projections, sections, overlaps, injectivity."""
    _run("covering-check", scenario, seed, max_degree, out)


@main.command("adapted-check")
@_common
def adapted_check(scenario, seed, max_degree, out):
    """Character subordination of the partition to the covering, in both
    the literal and closure variants."""
    _run("adapted-check", scenario, seed, max_degree, out)


@main.command("glue-derivations")
@_common
def glue_derivations(scenario, seed, max_degree, out):
    """Glue chart derivations and verify Leibniz plus coefficient
    recovery."""
    _run("glue-derivations", scenario, seed, max_degree, out)


@main.command("forms-check")
@_common
def forms_check(scenario, seed, max_degree, out):
    """Differential calculus: nilpotent differential, wedge
    compatibility, locality, duality rank."""
    _run("forms-check", scenario, seed, max_degree, out)


@main.command("curvature")
@_common
def curvature(scenario, seed, max_degree, out):
    """Connection validity, axioms, and the two-route curvature
    comparison."""
    _run("curvature", scenario, seed, max_degree, out)


@main.command("all")
@_common
def run_all(scenario, seed, max_degree, out):
    """Run every check family the scenario supports."""
    _run("all", scenario, seed, max_degree, out)
