"""Reference configurations: the rational normal curve family, the conic points,
and the bundled scenario files."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .algebra import MPoly
from .exterior import PForm
from .formspace import FormSpace

CONIC_POINTS = ((1, 0, 0), (0, 0, 1), (1, 1, 1), (1, 2, 4), (1, 3, 9))


@dataclass(frozen=True)
class RNCFamily:
    n: int
    space: FormSpace
    forms: tuple  # w_0 .. w_{n+2}
    witness: PForm  # sum (i+1) w_i, not integrable


def rnc_family(n: int) -> RNCFamily:
    """``w_0 = dx_0``, ``w_j = ((j+1) + j(x_0+...+x_n)) dx_j`` in ``C^(n+1)``.

    The two extra forms are ``sum_{i=0}^n w_i`` and ``sum_{i=0}^n w_i/(i+2)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    nv = n + 1
    total = sum(MPoly.gens(nv), MPoly.zero(nv))
    base = [PForm.dx(nv, 0)] + [PForm.dx(nv, j) * ((j + 1) + total * j) for j in range(1, n + 1)]
    zero = PForm.zero(nv, 1)
    w_sum = sum(base, zero)
    w_avg = sum((w * Fraction(1, i + 2) for i, w in enumerate(base)), zero)
    witness = sum((w * (i + 1) for i, w in enumerate(base)), zero)
    return RNCFamily(n, FormSpace(base), tuple(base) + (w_sum, w_avg), witness)


def rnc_family_source(n: int) -> str:
    """Scenario text running every check on the family for a given ``n``."""
    nv = n + 1
    coords = " + ".join(f"x{i}" for i in range(nv))
    lines = [f"# rational normal curve family, n = {n}", f"ambient {nv};", f"s = {coords};", "w0 = d(x0);"]
    for j in range(1, n + 1):
        lines.append(f"w{j} = ({j + 1} + {j}*s) * d(x{j});")
    ws = [f"w{i}" for i in range(nv)]
    lines.append(f"wsum = {' + '.join(ws)};")
    lines.append("wavg = " + " + ".join(f"1/{i + 2}*w{i}" for i in range(nv)) + ";")
    lines.append("witness = " + " + ".join(f"{i + 1}*w{i}" for i in range(nv)) + ";")
    lines.append(f"W = space({', '.join(ws)});")
    lines.append(f"query rank(W) expect {nv};")
    for w in ws[1:]:
        lines.append(f"query is_integrable({w}) expect true;")
    lines.append("query is_integrable(wsum) expect true;")
    lines.append("query is_integrable(wavg) expect true;")
    lines.append("query is_integrable(witness) expect false;")
    lines.append(f"query verify_veronese_web(W, [{', '.join(ws)}, wsum, wavg]) expect true;")
    return "\n".join(lines) + "\n"


def bundled(name: str) -> str:
    """Text of a scenario file shipped in ``intforms/fixtures``."""
    return resources.files(__package__).joinpath("fixtures", name).read_text(encoding="utf-8")


def bundled_names() -> list[str]:
    root = resources.files(__package__).joinpath("fixtures")
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".form"))
