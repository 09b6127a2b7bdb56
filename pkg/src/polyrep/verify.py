"""End-to-end check of the computational premises behind the glued polymatroid."""
from __future__ import annotations

from dataclasses import dataclass

from .constructs import (
    X1_LABELS,
    X2_LABELS,
    direct_sum,
    dfz_x2,
    epsilon_perturb,
    equalities_x1,
    equalities_x2,
    evaluate_equalities,
    fano_x1,
)
from .gf import FieldSpec, field_make
from .inequality import dfz_ratio, ingleton_scan, is_polymatroid
from .lattice import _as_fraction, restrict
from .matroid import equality_set_check, is_connected, is_matroid
from .represent import rank_vector


@dataclass(frozen=True)
class CheckItem:
    name: str
    passed: bool
    detail: str = ""
    flag: str = ""

    def record(self) -> dict:
        rec = {"item": self.name, "status": "pass" if self.passed else "fail", "detail": self.detail}
        if self.flag:
            rec["flag"] = self.flag
        return rec


def verify_paper(
    field_x1: FieldSpec | None = None,
    field_x2: FieldSpec | None = None,
    epsilon=1,
    trials: int = 1_000_000,
    seed: int = 1,
) -> list:
    field_x1 = field_x1 or field_make(2)
    field_x2 = field_x2 or field_make(3)
    eps = _as_fraction(epsilon)
    items = []

    h1 = rank_vector(fano_x1(field_x1))
    h2 = rank_vector(dfz_x2(field_x2))
    items.append(CheckItem("x1_is_matroid", is_matroid(h1), f"over {field_x1}"))
    items.append(CheckItem("x2_is_matroid", is_matroid(h2), f"over {field_x2}"))

    for name, preds, h, fld, odd_needed in (
        ("equalities_x1", equalities_x1(), h1, field_x1, False),
        ("equalities_x2", equalities_x2(), h2, field_x2, True),
    ):
        results = evaluate_equalities(preds, h)
        failed = [str(p) for p, ok in results if not ok]
        flag = ""
        if failed and (fld.p % 2 == 1) != odd_needed:
            want = "odd" if odd_needed else "even"
            flag = f"expected-fail: these equalities need {want} characteristic, got {fld}"
        detail = f"{len(results) - len(failed)}/{len(results)} hold" + (f"; failing: {failed}" if failed else "")
        items.append(CheckItem(name, not failed, detail, flag))

    # Fano over odd and X2 over even characteristic must each break exactly one equality
    for name, build, preds, labels, fld, key in (
        ("x1_fails_over_GF(3)", fano_x1, equalities_x1(), X1_LABELS, field_make(3), "W4"),
        ("x2_fails_over_GF(2)", dfz_x2, equalities_x2(), X2_LABELS, field_make(2), "Z3"),
    ):
        h = rank_vector(build(fld)).with_labels(labels)
        failed = [str(p) for p, ok in evaluate_equalities(preds, h) if not ok]
        ok = len(failed) == 1 and failed[0].startswith(f"H({key} |")
        items.append(CheckItem(name, ok, f"failing: {failed}"))

    c1, c2 = is_connected(h1), is_connected(h2)
    items.append(CheckItem("x1_connected", c1))
    items.append(CheckItem("x2_connected", c2))

    big = direct_sum(h1, h2)
    items.append(CheckItem("phi_not_connected", not is_connected(big), "X1 separates phi"))
    x1, x2 = (1 << 7) - 1, ((1 << 13) - 1) << 7
    ok = big.full == h1.full + h2.full and big[x1] == h1.full and big[x2] == h2.full
    items.append(CheckItem("phi_direct_sum", ok, f"phi(X)={big.full}, phi(X1)={big[x1]}, phi(X2)={big[x2]}"))

    if not 0 <= eps <= big.full:
        items.append(CheckItem("phi_eps_build", False, f"epsilon {eps} outside [0, {big.full}]"))
        return items
    g = epsilon_perturb(big, eps)
    r1, r2 = restrict(g, range(7)), restrict(g, range(7, 20))
    items.append(CheckItem(
        "phi_eps_restrictions", r1 == h1 and r2 == h2,
        f"restriction to X1 {'equals' if r1 == h1 else 'differs from'} phi1; "
        f"to X2 {'equals' if r2 == h2 else 'differs from'} phi2",
    ))
    e1 = equality_set_check(h1, r1.with_labels(X1_LABELS))
    e2 = equality_set_check(h2, r2.with_labels(X2_LABELS))
    items.append(CheckItem("phi_eps_satisfies_I(M1)_I(M2)", bool(e1) and bool(e2)))

    pm = is_polymatroid(g)
    items.append(CheckItem("phi_eps_polymatroid", bool(pm), "" if pm else f"{pm.axiom} fails"))
    rep = ingleton_scan(g, mode="sampled", trials=trials, seed=seed)
    items.append(CheckItem(
        "phi_eps_ingleton_sampled", rep.min_score >= 0,
        f"min J = {rep.min_score} over {rep.quadruples_checked} quadruples (seed {seed})",
    ))

    lhs, rhs = g[x1] + g[x2], g.full
    flag = ""
    if eps <= 0:
        flag = "epsilon must be strictly positive for the strict inequality"
    items.append(CheckItem(
        "strict_superadditivity", lhs > rhs,
        f"phi_eps(X1) + phi_eps(X2) = {lhs}, phi_eps(X) = {rhs}",
        flag,
    ))

    r_x1 = dfz_ratio(h1, [1 << i for i in range(3)], [1 << i for i in range(3, 7)])
    r_x2 = dfz_ratio(h2, [1 << i for i in range(5)], [1 << i for i in range(5, 13)])
    items.append(CheckItem("dfz_ratio_x1", r_x1 == 1, f"min H(Y)/max H(W) = {r_x1}"))
    items.append(CheckItem("dfz_ratio_x2", r_x2 == 1, f"min H(Z)/max H(V) = {r_x2}"))
    return items


def all_passed(items) -> bool:
    return all(it.passed for it in items)


__all__ = ["CheckItem", "verify_paper", "all_passed"]
