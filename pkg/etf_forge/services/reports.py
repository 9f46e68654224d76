"""Report builders shared by the command line and the HTTP routers"""
import logging
from typing import Iterable, Optional, Sequence, Tuple, Union

from ..core.config import Settings
from ..core.config import settings as default_settings
from ..core.elimination import rank
from ..core.exceptions import UsageError
from ..models.design import BlockDesign
from ..models.frame import FrameMatrix, GramMatrix, TripleTable
from ..models.group import PermGroup, symmetric_group
from ..schemas.field import FieldSchema
from ..schemas.group import PermGroupSchema
from ..schemas.report import ReportEnvelope
from . import construct, finite_field, gram_analysis, matroid, symmetry

logger = logging.getLogger(__name__)

Analyzable = Union[FrameMatrix, GramMatrix, TripleTable]

ANALYZE_CHECKS = ("equiangular", "tight", "welch", "3c", "imaginary")


def as_gram(obj: Analyzable) -> GramMatrix:
    if isinstance(obj, FrameMatrix):
        return gram_analysis.gram(obj)
    if isinstance(obj, GramMatrix):
        return obj
    raise UsageError("this command needs a frame or a Gram matrix, not a triple table")


def _cyclotomic(z) -> str:
    return str(z) if z is not None else None


# ==============================
# Fields
# ==============================
def field_report(p: int, s: int = 1, modulus: Optional[Sequence[int]] = None,
                 settings: Settings = default_settings) -> ReportEnvelope:
    field = finite_field.field_new(p, s, modulus, settings)
    report = ReportEnvelope(command="field", inputs={"p": p, "s": s, "modulus": list(modulus) if modulus else None})
    report.add("field", FieldSchema.from_domain(field).model_dump())
    admissible = finite_field.is_paley_admissible(field)
    report.add("paley_admissible", admissible)
    if admissible:
        report.add("qr_set", [list(x) for x in finite_field.qr_set(field)])
        twist = finite_field.intertwiner(field, settings)
        report.add("normal_basis_residue_log", twist.residue_log)
        report.add("intertwiner", [list(r) for r in twist.S])
    return report


# ==============================
# Analysis
# ==============================
def analyze_report(obj: Analyzable, checks: Iterable[str] = ANALYZE_CHECKS) -> ReportEnvelope:
    checks = list(checks)
    unknown = set(checks) - set(ANALYZE_CHECKS)
    if unknown:
        raise UsageError(f"unknown checks {sorted(unknown)}; choose from {list(ANALYZE_CHECKS)}")
    G = as_gram(obj)
    report = ReportEnvelope(command="analyze", inputs={"n": G.n, "m": G.order, "checks": checks})

    equiangular = gram_analysis.check_equiangular(G)
    tight = gram_analysis.check_tight(G)
    if "equiangular" in checks:
        report.add("equiangular", _cyclotomic(equiangular.value), passed=equiangular.ok, detail=equiangular.reason)
    if "tight" in checks:
        report.add("tight", {"bound": str(tight.bound) if tight.bound is not None else None, "rank": tight.rank},
                   passed=tight.ok, detail=tight.reason)
    etf = equiangular.ok and tight.ok
    if "welch" in checks and etf:
        welch = gram_analysis.welch_bound_check(G)
        report.add("welch_bound", str(welch.measured), passed=welch.ok, expected=str(welch.expected))
    if "3c" in checks and etf:
        uniform = gram_analysis.check_3c_uniform(G)
        report.add("3c_uniform", uniform.ok,
                   detail=uniform.reason or f"TP + conj(TP) = {_cyclotomic(uniform.real_part)}")
    if "imaginary" in checks and etf:
        report.add("triple_products_imaginary", gram_analysis.all_triple_products_imaginary(G))
    return report


# ==============================
# Symmetry
# ==============================
def symmetry_group(obj: Analyzable, mode: str, settings: Settings = default_settings) -> PermGroup:
    if mode == "vectors":
        return symmetry.vector_symmetry_group(gram_analysis.pair_labels(as_gram(obj)), settings)
    if mode == "lines":
        source = obj if isinstance(obj, TripleTable) else as_gram(obj)
        return symmetry.line_symmetry_group(gram_analysis.triple_labels(source), settings)
    raise UsageError(f"mode must be 'vectors' or 'lines', got {mode!r}")


def expected_group(spec: str) -> PermGroup:
    """'agl:q', 'asp:p' or 'sym:n'"""
    name, _, value = spec.partition(":")
    if not value.isdigit():
        raise UsageError(f"expected group must look like agl:27, asp:3 or sym:5, got {spec!r}")
    value = int(value)
    if name == "agl":
        return symmetry.agl_subgroup(construct.paley_field(value))
    if name == "asp":
        return symmetry.asp_group(value)
    if name == "sym":
        return symmetric_group(value)
    raise UsageError(f"unknown expected group {name!r}")


def symmetry_report(obj: Analyzable, mode: str = "lines", expect: Optional[str] = None,
                    max_k: int = 4, settings: Settings = default_settings) -> ReportEnvelope:
    group = symmetry_group(obj, mode, settings)
    logger.info("%s symmetry group on %d points has order %d", mode, group.n, group.order)
    report = ReportEnvelope(command="symmetry", inputs={"mode": mode, "expect": expect, "n": group.n})
    report.add("group", PermGroupSchema.from_domain(group).model_dump())
    report.add("order", group.order)
    report.add("homogeneity", symmetry.homogeneity_table(group, max_k, settings))
    if expect:
        predicted = expected_group(expect)
        if predicted.n != group.n:
            raise UsageError(f"{expect} acts on {predicted.n} points, the frame has {group.n}")
        report.add("expected_group_order", group.order, expected=predicted.order,
                   passed=group.order == predicted.order)
        report.add("expected_group_equal", symmetry.groups_equal(predicted, group),
                   passed=symmetry.groups_equal(predicted, group))
    return report


def homogeneity_report(obj: Analyzable, mode: str = "lines", max_k: int = 4,
                       settings: Settings = default_settings) -> ReportEnvelope:
    group = symmetry_group(obj, mode, settings)
    report = ReportEnvelope(command="homogeneity", inputs={"mode": mode, "max_k": max_k})
    report.add("order", group.order)
    for row in symmetry.homogeneity_table(group, max_k, settings):
        report.add(f"{row['k']}-transitive", row["transitive"])
        report.add(f"{row['k']}-homogeneous", row["homogeneous"])
    return report


def switch_equiv_report(first: Analyzable, second: Analyzable, allow_permutation: bool = False,
                        settings: Settings = default_settings) -> ReportEnvelope:
    G1, G2 = as_gram(first), as_gram(second)
    report = ReportEnvelope(command="switch-equiv", inputs={"n": G1.n, "allow_permutation": allow_permutation})
    aligned = G1.n == G2.n and gram_analysis.switching_equivalent_aligned(G1, G2)
    report.add("aligned_equivalent", aligned)
    if allow_permutation and G1.n == G2.n:
        sigma = symmetry.find_tp_isomorphism(
            gram_analysis.triple_labels(G1), gram_analysis.triple_labels(G2), settings
        )
        report.add("permutation", list(sigma.images) if sigma is not None else None)
    return report


# ==============================
# Matroid
# ==============================
def spark_report(obj: Analyzable, settings: Settings = default_settings,
                 jobs: Optional[int] = None, max_size: Optional[int] = None) -> ReportEnvelope:
    G = as_gram(obj)
    value = matroid.spark(G, settings, jobs, max_size)
    d = rank(G.entries, G.order)
    report = ReportEnvelope(command="spark", inputs={"n": G.n, "d": d, "max_size": max_size})
    report.add("spark", value)
    lower = matroid.spark_lower_bound(d, G.n)
    # the bound holds for ETFs only
    etf = gram_analysis.check_equiangular(G).ok and gram_analysis.check_tight(G).ok
    report.add("spark_lower_bound", lower, passed=value >= lower if etf else None)
    if G.n > d:
        report.add("lower_bound_attained", matroid.spark_lower_bound_attained(d, G.n, value))
    report.add("full_spark", value == d + 1)
    return report


def bender_report(obj: Analyzable, design_check: bool = False, settings: Settings = default_settings,
                  jobs: Optional[int] = None) -> Tuple[ReportEnvelope, BlockDesign]:
    G = as_gram(obj)
    design = matroid.bender(G, settings, jobs)
    report = ReportEnvelope(command="bender", inputs={"n": G.n, "design_check": design_check})
    report.add("spark", design.k)
    report.add("blocks", len(design))
    report.add("circuits_sampled", matroid.check_circuits(G, design, settings), passed=True)
    if design_check:
        verdict = matroid.bender_design_degree(design, settings=settings)
        report.add("design_degree", verdict.t)
        report.add("design_lambda", verdict.lam)
    return report, design


def design_report(design: BlockDesign, max_t: Optional[int] = None) -> ReportEnvelope:
    report = ReportEnvelope(command="design", inputs={"v": design.v, "k": design.k, "blocks": len(design)})
    for t in range(1, min(max_t or design.k, design.k) + 1):
        verdict = matroid.is_t_design(design, t)
        report.add(f"{t}-design", verdict.lam, passed=None, detail=verdict.reason)
        if not verdict.ok:
            break
    return report
