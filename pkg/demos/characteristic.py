"""Two small matroids whose representability depends on the field characteristic.

The Fano arrangement satisfies W4 in span(W1, W2) only in characteristic 2,
and the second arrangement satisfies Z3 in span(V3..V8) only in odd
characteristic.  Each equality list is checked over both GF(2) and GF(3).
"""
from polyrep import field_make, rank_vector
from polyrep.constructs import (
    X1_LABELS,
    X2_LABELS,
    dfz_x2,
    equalities_x1,
    equalities_x2,
    evaluate_equalities,
    fano_x1,
)


def report(name, build, preds, labels):
    for p in (2, 3):
        h = rank_vector(build(field_make(p))).with_labels(labels)
        results = evaluate_equalities(preds, h)
        broken = [str(pred) for pred, ok in results if not ok]
        held = len(results) - len(broken)
        print(f"{name} over GF({p}): {held}/{len(results)} equalities hold", end="")
        print(f"; broken: {', '.join(broken)}" if broken else "")


if __name__ == "__main__":
    report("Fano", fano_x1, equalities_x1(), X1_LABELS)
    report("X2  ", dfz_x2, equalities_x2(), X2_LABELS)
