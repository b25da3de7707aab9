"""The acceptance suite: one callable per criterion, shared by the CLI
(`qclab suite all`) and by tests/test_acceptance.py.

Each criterion returns (ok, detail) and is timed against its budget; all
comparisons are exact symbolic equalities.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

from .catalog import (
    catalog_names,
    document_is_valid,
    entry_report,
    load_document,
    load_ring_spec,
    mutated_documents,
)
from .cyclotomic import CycRat, zeta_as_cycrat
from .errors import NullHomologous
from .filtered import lemma_compare_suite, morse_model
from .gelfand_cetlin import (
    FLAG_PRESETS,
    classify_point,
    flag_dim,
    gc_pattern,
    gc_polytope,
    monotone_lambda,
    vertices,
)
from .scalars import LaurentScalar, NovikovScalar


def _wu_idempotents(algebra):
    """The three projective-plane idempotents over the Novikov field:
    (1/3)(1 + theta^j u T^(-1/3) + theta^(2j) u^2 T^(-2/3))."""
    theta = zeta_as_cycrat(3, algebra.m)
    third = Fraction(1, 3)
    out = []
    for j in (1, 2, 3):
        coeffs = {
            "1": NovikovScalar.monomial(0, CycRat.rational(third, algebra.m), "up", algebra.m),
            "u": NovikovScalar.monomial(Fraction(-1, 3), theta**j * third, "up", algebra.m),
            "u2": NovikovScalar.monomial(Fraction(-2, 3), theta ** (2 * j) * third, "up", algebra.m),
        }
        out.append(algebra.element_from_dict(coeffs))
    return out


def criterion_cp2_idempotents() -> tuple[bool, str]:
    """Three projective-plane idempotents, exactly the closed formulas."""
    algebra = load_ring_spec("cp2_novikov")
    dec = algebra.decompose()
    expected = _wu_idempotents(algebra)
    got = set(dec.idempotents)
    ok = len(dec.idempotents) == 3 and got == set(expected)
    # orthogonality and completeness are re-checked explicitly
    total = algebra.zero()
    for i, e in enumerate(dec.idempotents):
        total = total + e
        if algebra.qmul(e, e) != e:
            ok = False
        for f in dec.idempotents[i + 1 :]:
            if algebra.qmul(e, f):
                ok = False
    if total != algebra.identity():
        ok = False
    return ok, f"{len(dec.idempotents)} idempotents, formula match={got == set(expected)}"


def criterion_quadric_splittings() -> tuple[bool, str]:
    """Field-factor counts and closed idempotent formulas for the quadrics."""
    notes = []
    ok = True
    # two factors over the Laurent field, with the stated duals
    q2 = load_ring_spec("quadric2")
    dec2 = q2.decompose()
    ok &= len(dec2.idempotents) == 2
    hom = q2.dual_algebra()
    half = Fraction(1, 2)
    expected_pd = {
        hom.element_from_dict(
            {"M": LaurentScalar.monomial(0, CycRat.rational(half, q2.m), "homology", 1, 2, q2.m),
             "P": LaurentScalar.monomial(1, CycRat.rational(sign * half, q2.m), "homology", 1, 2, q2.m)}
        )
        for sign in (1, -1)
    }
    got_pd = {q2.poincare_dual(e) for e in dec2.idempotents}
    ok &= got_pd == expected_pd
    notes.append(f"Q2/C: {len(dec2.idempotents)} factors, dual formulas={got_pd == expected_pd}")
    # four factors over the Novikov field
    ext = q2.extend_ring()
    dec4 = ext.decompose()
    ok &= len(dec4.idempotents) == 4
    dual_ext = ext.dual_algebra()
    quarter = CycRat.rational(Fraction(1, 4), q2.m)

    def hom_el(sign_p, a_coeff, b_coeff):
        return dual_ext.element_from_dict(
            {
                "1^": NovikovScalar.monomial(0, quarter, "down", q2.m),
                "p^": NovikovScalar.monomial(1, sign_p * quarter, "down", q2.m),
                "a^": NovikovScalar.monomial(Fraction(1, 2), a_coeff * quarter, "down", q2.m),
                "b^": NovikovScalar.monomial(Fraction(1, 2), b_coeff * quarter, "down", q2.m),
            }
        )

    expected4 = {hom_el(1, 1, 1), hom_el(1, -1, -1), hom_el(-1, 1, -1), hom_el(-1, -1, 1)}
    got4 = {ext.poincare_dual(e) for e in dec4.idempotents}
    ok &= got4 == expected4
    notes.append(f"Q2/Novikov: {len(dec4.idempotents)} factors, dual formulas={got4 == expected4}")
    # the coefficient embedding splits compatibly
    plus = next(e for e in dec2.idempotents if _p_sign(q2, e) > 0)
    minus = next(e for e in dec2.idempotents if _p_sign(q2, e) < 0)
    fours = list(dec4.idempotents)
    iplus = q2.iota_element(plus, ext)
    iminus = q2.iota_element(minus, ext)
    plus_parts = [e for e in fours if _p_sign(ext, e) > 0]
    minus_parts = [e for e in fours if _p_sign(ext, e) < 0]
    ok &= len(plus_parts) == 2 and iplus == plus_parts[0] + plus_parts[1]
    ok &= len(minus_parts) == 2 and iminus == minus_parts[0] + minus_parts[1]
    notes.append("iota(e+-) = paired sums")
    # the four-dimensional quadric: two factors, and the point relation
    q4 = load_ring_spec("quadric4", m=24)
    dec_q4 = q4.decompose()
    ok &= len(dec_q4.idempotents) == 2
    q4h = load_ring_spec("quadric4_homology")
    pt = q4h.basis_element("pt")
    rel = q4h.qmul(pt, pt) == q4h.basis_element("M", exponent=-2)
    ok &= rel
    notes.append(f"Q4/C: {len(dec_q4.idempotents)} factors, pt*pt=[Q4]s^-2: {rel}")
    return bool(ok), "; ".join(notes)


def _p_sign(algebra, e):
    """Sign of the point-class coordinate of a quadric idempotent."""
    idx = algebra._index["p"]
    coeff = e.coords[idx]
    _, c = coeff.leading()
    return 1 if c.coeffs[0] > 0 else -1


def criterion_valuations() -> tuple[bool, str]:
    """Idempotent valuations and the two scalar valuation laws."""
    algebra = load_ring_spec("cp2_novikov")
    dec = algebra.decompose()
    ok = all(algebra.valuation_qh(e) == Fraction(-2, 3) for e in dec.idempotents)
    rng = random.Random(20260810)
    m = algebra.m

    def random_cyc():
        c = CycRat.rational(Fraction(rng.randint(-6, 6), rng.randint(1, 4)), m)
        if rng.random() < 0.25:
            c = c + zeta_as_cycrat(3, m) * rng.randint(1, 3)
        return c

    def random_laurent():
        while True:
            terms = [(rng.randint(-5, 5), random_cyc()) for _ in range(rng.randint(1, 4))]
            s = LaurentScalar("cohomology", terms, None, Fraction(rng.randint(1, 3)), 2, m)
            if s:
                return s

    emb_ok = 0
    for _ in range(1000):
        a = random_laurent()
        if a.iota().valuation() == a.valuation():
            emb_ok += 1
    ok &= emb_ok == 1000

    def random_novikov():
        while True:
            terms = [
                (Fraction(rng.randint(-8, 8), rng.choice([1, 2, 3, 4])), random_cyc())
                for _ in range(rng.randint(1, 4))
            ]
            s = NovikovScalar("up", terms, None, m)
            if s:
                return s

    mult_ok = 0
    for _ in range(1000):
        x, y = random_novikov(), random_novikov()
        if (x * y).valuation() == x.valuation() + y.valuation():
            mult_ok += 1
    ok &= mult_ok == 1000
    return bool(ok), f"nu(e_j)=-2/3 all, embedding {emb_ok}/1000, product law {mult_ok}/1000"


def criterion_lemma_compare() -> tuple[bool, str]:
    summary = lemma_compare_suite(seeds=100, size_bound=8)
    return summary["all_exact"], (
        f"{summary['classes_checked']} classes: extension {summary['extension_invariance']}, "
        f"spectrality {summary['spectrality']}, shift {summary['shift_equivariance']}"
    )


def criterion_zero_hamiltonian() -> tuple[bool, str]:
    """Morse-like models: the invariant of every basis class equals the
    valuation of its dual, including quantum-variable shifts."""
    checked = 0
    ok = True
    for name in ("cp2", "quadric2"):
        algebra = load_ring_spec(name)
        model = morse_model(algebra)
        dual = algebra.dual_algebra()
        for i in range(len(algebra.basis)):
            for exp in (0, 1, -2):
                a = algebra.basis_element(i, exponent=exp)
                pd = algebra.poincare_dual(a)
                try:
                    r = model.rho(list(pd.coords))
                except NullHomologous:
                    ok = False
                    continue
                checked += 1
                if r != dual.valuation_qh(pd):
                    ok = False
    return ok, f"rho = nu(PD(a)) on {checked} classes of the cp2 and quadric2 models"


def criterion_gelfand_cetlin() -> tuple[bool, str]:
    notes = []
    gr24, shift = FLAG_PRESETS["gr24"]
    ok = flag_dim(gr24) == 4
    lam = monotone_lambda(gr24, shift)
    ok &= lam == (4, 4, 0, 0)
    pattern = gc_pattern(gr24, lam)
    ok &= len(pattern.coords) == 4
    poly = gc_polytope(pattern)
    cls = classify_point(poly, [Fraction(2), Fraction(3), Fraction(1), Fraction(2)])
    ok &= cls == {"class": "Interior"}
    notes.append(f"dim=4, |I|=4, lambda={tuple(int(x) for x in lam)}, u0 {cls['class']}")
    for preset in ("gr24", "cp3", "f123"):
        flag, m0 = FLAG_PRESETS[preset]
        p = gc_polytope(gc_pattern(flag, monotone_lambda(flag, m0)))
        verts = vertices(p)  # raises MethodDisagreement on mismatch
        ok &= len(verts) > 0
        ok &= all(all(v >= 0 for v in p.evaluate(list(vertex))) for vertex in verts)
        notes.append(f"{preset}: {len(verts)} vertices, methods agree")
    return bool(ok), "; ".join(notes)


def criterion_catalog_integrity() -> tuple[bool, str]:
    names = catalog_names()
    ok = True
    mutants = 0
    caught = 0
    for name in names:
        report = entry_report(name)
        if not report["ok"]:
            ok = False
        doc = load_document(name)
        for _loc, mutated in mutated_documents(doc):
            mutants += 1
            if not document_is_valid(mutated):
                caught += 1
    ok &= mutants == caught
    return bool(ok), f"{len(names)} entries valid; mutations rejected {caught}/{mutants}"


CRITERIA = [
    ("cp2_idempotents", criterion_cp2_idempotents, 1.0),
    ("quadric_splittings", criterion_quadric_splittings, 2.0),
    ("valuations", criterion_valuations, 2.0),
    ("lemma_compare_suite", criterion_lemma_compare, 5.0),
    ("zero_hamiltonian_model", criterion_zero_hamiltonian, 2.0),
    ("gelfand_cetlin", criterion_gelfand_cetlin, 3.0),
    ("catalog_integrity", criterion_catalog_integrity, 5.0),
]


def run_all(report=print) -> list[dict]:
    results = []
    for name, fn, budget in CRITERIA:
        start = time.perf_counter()
        try:
            ok, detail = fn()
        except Exception as exc:  # a crash is a failure, not an abort
            ok, detail = False, f"exception: {type(exc).__name__}: {exc}"
        elapsed = time.perf_counter() - start
        in_time = elapsed < budget
        results.append(
            {
                "criterion": name,
                "ok": bool(ok and in_time),
                "checks_pass": bool(ok),
                "seconds": round(elapsed, 3),
                "budget_seconds": budget,
                "detail": detail,
            }
        )
        if report:
            status = "PASS" if ok and in_time else "FAIL"
            report(f"[{status}] {name}: {detail} ({elapsed:.2f}s / budget {budget:.0f}s)")
    return results
