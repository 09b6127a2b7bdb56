"""Regenerate the golden rank vectors from the sympy oracle (no polyrep import)."""
import sys
from pathlib import Path

here = Path(__file__).resolve().parent
sys.path.insert(0, str(here.parent))

import oracles  # noqa: E402

if __name__ == "__main__":
    (here / "fano_gf2.rankvec").write_text(oracles.format_rankvec(oracles.fano_ranks(2), 7))
    (here / "fano_gf3.rankvec").write_text(oracles.format_rankvec(oracles.fano_ranks(3), 7))
    (here / "x2_gf3.rankvec").write_text(oracles.format_rankvec(oracles.x2_ranks(3), 13))
    (here / "x2_gf2.rankvec").write_text(oracles.format_rankvec(oracles.x2_ranks(2), 13))
    fano = oracles.fano_ranks(2)
    (here / "fano_gf2.circuits").write_text("".join(f"{c:x}\n" for c in oracles.brute_circuits(fano, 7)))
