"""Mixed-integer linear model of the factored objective.

One binary d_j selects the matching of cycle j.  The quadratic pair-table
terms are linearised through two nonnegative variables per cycle j < q,
p0_j and p1_j, each bounded below by a row that evaluates, for the four
(d_j, d_j') combinations, to the pair-table weight when d_j has the row's
bit and to zero or less otherwise.  Minimisation pushes each p to the
max(0, row) value, so the linear objective

    sum_{j<q} (p0_j + p1_j) + sum_j (P0_j (1 - d_j) + P1_j d_j) + constant

agrees with the factored tour cost on every binary point, which
verify_linearization checks exhaustively.

The writer emits a deterministic LP text file (Minimize / Subject To /
Bounds / Binary / End); read_lp parses that dialect back for round trips.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

from .contacts import ContactTables, objective_from_delta
from .exact import GuardError

MAX_Q_VERIFY = 16


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    coeffs: dict[str, int]      # zero coefficients omitted
    sense: str                  # only ">=" is produced
    rhs: int


@dataclass(frozen=True)
class MIPModel:
    q: int
    objective: dict[str, int]   # zero coefficients omitted
    constant: int
    constraints: tuple[LinearConstraint, ...]
    binaries: tuple[str, ...]
    continuous: tuple[str, ...]

    def variable_order(self) -> list[str]:
        return list(self.binaries) + list(self.continuous)


def _dvar(j: int) -> str:
    return f"d{j + 1}"


def _pvar(k: int, j: int) -> str:
    return f"p{k}_{j + 1}"


def build_mip(t: ContactTables) -> MIPModel:
    """Assemble the model from the contact tables."""
    q = t.q
    binaries = tuple(_dvar(j) for j in range(q))
    continuous = tuple(_pvar(k, j) for j in range(max(q - 1, 0)) for k in (0, 1))

    objective: dict[str, int] = {}
    for j in range(q):
        c = t.p1[j] - t.p0[j]
        if c:
            objective[_dvar(j)] = c
    for var in continuous:
        objective[var] = 1
    constant = t.constant + sum(t.p0)

    constraints = []
    for j in range(q - 1):
        later = [jp for jp in t.adjacency[j] if jp > j]
        # row 0: p0_j >= sum_{j'>j} P00 (1 - d_j - d_j') + P01 (d_j' - d_j)
        coeffs: dict[str, int] = {_pvar(0, j): 1}
        rhs = 0
        dj = 0
        for jp in later:
            w00 = t.pair_value(j, jp, 0, 0)
            w01 = t.pair_value(j, jp, 0, 1)
            dj += w00 + w01
            if w00 - w01:
                coeffs[_dvar(jp)] = w00 - w01
            rhs += w00
        if dj:
            coeffs[_dvar(j)] = dj
        constraints.append(LinearConstraint(f"c0_{j + 1}", coeffs, ">=", rhs))
        # row 1: p1_j >= sum_{j'>j} P10 (d_j - d_j') + P11 (d_j + d_j' - 1)
        coeffs = {_pvar(1, j): 1}
        rhs = 0
        dj = 0
        for jp in later:
            w10 = t.pair_value(j, jp, 1, 0)
            w11 = t.pair_value(j, jp, 1, 1)
            dj += w10 + w11
            if w10 - w11:
                coeffs[_dvar(jp)] = w10 - w11
            rhs -= w11
        if dj:
            coeffs[_dvar(j)] = -dj
        constraints.append(LinearConstraint(f"c1_{j + 1}", coeffs, ">=", rhs))

    return MIPModel(q=q, objective=objective, constant=constant,
                    constraints=tuple(constraints), binaries=binaries,
                    continuous=continuous)


def verify_linearization(t: ContactTables) -> bool:
    """Exhaustively check the model against the factored objective.

    For every binary point the p variables are set to their tight values
    max(0, row right-hand side); the linear objective must then equal
    objective_from_delta, and the model minimum must equal the true
    minimum.  Guarded to q <= 16.
    """
    if t.q > MAX_Q_VERIFY:
        raise GuardError(f"q = {t.q} exceeds the verification bound {MAX_Q_VERIFY}")
    model = build_mip(t)
    best_linear: int | None = None
    best_direct: int | None = None
    for point in range(1 << t.q):
        delta = tuple((point >> j) & 1 for j in range(t.q))
        values = {_dvar(j): delta[j] for j in range(t.q)}
        for con in model.constraints:
            pvars = [v for v in con.coeffs if v.startswith("p")]
            (pvar,) = pvars
            slack = con.rhs - sum(c * values[v] for v, c in con.coeffs.items()
                                  if v != pvar)
            values[pvar] = max(0, slack)
        linear = model.constant + sum(c * values[v]
                                      for v, c in model.objective.items())
        direct = objective_from_delta(t, delta)
        if linear != direct:
            return False
        if best_linear is None or linear < best_linear:
            best_linear = linear
        if best_direct is None or direct < best_direct:
            best_direct = direct
    return best_linear == best_direct


# ====== LP text format ======

def _render_terms(coeffs: dict[str, int], order: list[str],
                  constant: int | None = None) -> str:
    parts: list[str] = []
    for var in order:
        c = coeffs.get(var, 0)
        if c == 0:
            continue
        mag = var if abs(c) == 1 else f"{abs(c)} {var}"
        if not parts:
            parts.append(mag if c > 0 else f"-{mag}")
        else:
            parts.append(f"+ {mag}" if c > 0 else f"- {mag}")
    if constant is not None:
        if not parts:
            parts.append(str(constant))
        elif constant >= 0:
            parts.append(f"+ {constant}")
        else:
            parts.append(f"- {-constant}")
    if not parts:
        return "0"
    return " ".join(parts)


def write_lp(model: MIPModel, out: IO[str], include_constant: bool = True) -> None:
    """Emit the model deterministically; terms follow the variable order
    d1..dq, p0_1, p1_1, ...  Zero coefficients are omitted; a constraint
    left with no terms is emitted as a comment."""
    order = model.variable_order()
    out.write("Minimize\n")
    constant = model.constant if include_constant else None
    out.write(f" obj: {_render_terms(model.objective, order, constant)}\n")
    out.write("Subject To\n")
    for con in model.constraints:
        if not con.coeffs:
            out.write(f"\\ {con.name}: vacuous (all coefficients zero)\n")
            continue
        out.write(f" {con.name}: {_render_terms(con.coeffs, order)} "
                  f"{con.sense} {con.rhs}\n")
    out.write("Bounds\n")
    for var in model.continuous:
        out.write(f" {var} >= 0\n")
    out.write("Binary\n")
    for var in model.binaries:
        out.write(f" {var}\n")
    out.write("End\n")


def lp_text(model: MIPModel, include_constant: bool = True) -> str:
    import io
    buf = io.StringIO()
    write_lp(model, buf, include_constant)
    return buf.getvalue()


def read_lp(text: str) -> MIPModel:
    """Parse the dialect produced by write_lp back into a model."""
    section = None
    objective: dict[str, int] = {}
    constant = 0
    constraints: list[LinearConstraint] = []
    binaries: list[str] = []
    bounds: list[str] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("\\"):
            continue
        if line in ("Minimize", "Subject To", "Bounds", "Binary", "End"):
            section = line
            continue
        if section == "Minimize":
            body = line.split(":", 1)[1].strip()
            objective, constant = _parse_terms(body, allow_constant=True)
        elif section == "Subject To":
            name, body = (part.strip() for part in line.split(":", 1))
            expr, sense_rhs = body.rsplit(">=", 1)
            coeffs, _ = _parse_terms(expr.strip(), allow_constant=False)
            constraints.append(LinearConstraint(name, coeffs, ">=",
                                                int(sense_rhs.strip())))
        elif section == "Bounds":
            bounds.append(line.split(">=")[0].strip())
        elif section == "Binary":
            binaries.append(line)
    return MIPModel(q=len(binaries), objective=objective, constant=constant,
                    constraints=tuple(constraints), binaries=tuple(binaries),
                    continuous=tuple(bounds))


def _parse_terms(body: str, allow_constant: bool) -> tuple[dict[str, int], int]:
    coeffs: dict[str, int] = {}
    constant = 0
    tokens = body.split()
    sign = 1
    pending: int | None = None
    for tok in tokens:
        if tok == "+":
            sign = 1
            continue
        if tok == "-":
            sign = -1
            continue
        neg = tok.startswith("-")
        if neg:
            tok = tok[1:]
            sign = -sign
        if tok.lstrip("0123456789") == "":
            if pending is not None:
                raise ValueError(f"two numbers in a row near {tok!r}")
            pending = int(tok)
            continue
        coeffs[tok] = sign * (1 if pending is None else pending)
        pending = None
        sign = 1
    if pending is not None:
        if not allow_constant:
            raise ValueError("constant term in a constraint body")
        constant = sign * pending
    elif not coeffs and body.strip() == "0":
        constant = 0
    return coeffs, constant
