"""Lie algebras given by structure constants.

Covers the two-parameter Cayley-Klein family of 3d isometry / (2+1)d
kinematical algebras, its centrally extended Galilei cousin, involutive
automorphisms and their Cartan-type decompositions, Inonu-Wigner
contractions, and the nine-cell catalog of algebras indexed by the signs
of the two curvature coefficients (w1, w2).

Generator order is fixed globally as H, P1, P2, K1, K2, J, Xi; bracket
tables store only pairs (i, j) with i < j, antisymmetry being implied.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .poly import Scalar, as_scalar

__all__ = [
    "LieAlgebra",
    "Involution",
    "Decomposition",
    "CatalogEntry",
    "ContractionError",
    "make_ck_algebra",
    "make_extended_galilei",
    "with_central_generator",
    "check_structure",
    "standard_involutions",
    "apply_involution",
    "cartan_check",
    "contract",
    "catalog_lookup",
    "catalog_arrows",
    "builtin_algebra",
    "BUILTIN_NAMES",
]

GLOBAL_ORDER = ("H", "P1", "P2", "K1", "K2", "J", "Xi")

CK_GENERATORS = ("H", "P1", "P2", "K1", "K2", "J")


class ContractionError(ValueError):
    """A rescaled structure constant has a negative power of epsilon."""


def _clean(combo):
    return {n: c for n, c in combo.items() if not c.is_zero}


class LieAlgebra:
    """Ordered generators plus an antisymmetric bracket table."""

    def __init__(self, name, generators, brackets, parameters=(), meta=None):
        self.name = name
        self.generators = tuple(generators)
        self.brackets = {k: _clean(v) for k, v in brackets.items()}
        self.brackets = {k: v for k, v in self.brackets.items() if v}
        self.parameters = tuple(parameters)
        self.meta = dict(meta or {})
        self._index = {g: i for i, g in enumerate(self.generators)}

    @property
    def dim(self) -> int:
        return len(self.generators)

    def index(self, label: str) -> int:
        return self._index[label]

    def bracket(self, i: int, j: int) -> dict:
        """[X_i, X_j] as a map generator index -> Scalar coefficient."""
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {n: -c for n, c in self.brackets.get((j, i), {}).items()}

    def bracket_labels(self, x: str, y: str) -> dict:
        """[x, y] keyed by generator label."""
        combo = self.bracket(self.index(x), self.index(y))
        return {self.generators[n]: c for n, c in combo.items()}

    def ad_combo(self, combo: dict, k: int) -> dict:
        """[sum_n combo[n] X_n, X_k] by linearity."""
        out: dict = {}
        for n, c in combo.items():
            for m, d in self.bracket(n, k).items():
                acc = out.get(m, Scalar.zero()) + c * d
                if acc.is_zero:
                    out.pop(m, None)
                else:
                    out[m] = acc
        return out

    def same_brackets(self, other: "LieAlgebra") -> bool:
        """Structural equality of bracket tables under the fixed order."""
        if self.generators != other.generators:
            return False
        keys = set(self.brackets) | set(other.brackets)
        for key in keys:
            a = self.brackets.get(key, {})
            b = other.brackets.get(key, {})
            if set(a) != set(b):
                return False
            if any(a[n] != b[n] for n in a):
                return False
        return True

    def combo_str(self, combo: dict) -> str:
        if not combo:
            return "0"
        parts = []
        for n in sorted(combo):
            c = combo[n]
            cs = str(c)
            label = self.generators[n]
            if cs == "1":
                body = label
            elif cs == "-1":
                body = f"-{label}"
            else:
                if " " in cs or "/" in cs:
                    cs = f"({cs})"
                body = f"{cs}*{label}"
            parts.append(body)
        return " + ".join(parts)

    def bracket_table(self) -> dict:
        """All stored brackets as '[X,Y]' -> combination string."""
        out = {}
        for (i, j), combo in sorted(self.brackets.items()):
            key = f"[{self.generators[i]},{self.generators[j]}]"
            out[key] = self.combo_str(combo)
        return out

    # -- JSON definition file schema ---------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "generators": list(self.generators),
            "parameters": list(self.parameters),
            "brackets": self.bracket_table(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "LieAlgebra":
        generators = tuple(data["generators"])
        brackets = {}
        for key, expr in data.get("brackets", {}).items():
            key = key.strip()
            if not (key.startswith("[") and key.endswith("]")):
                raise ValueError(f"bad bracket key {key!r}")
            x, _, y = key[1:-1].partition(",")
            x, y = x.strip(), y.strip()
            combo = _linear_combo(as_scalar(expr), generators)
            i, j = generators.index(x), generators.index(y)
            if i == j:
                raise ValueError(f"self-bracket {key!r} must not be given")
            if i > j:
                i, j = j, i
                combo = {n: -c for n, c in combo.items()}
            idx_combo = {generators.index(n): c for n, c in combo.items()}
            brackets[(i, j)] = idx_combo
        return cls(
            data.get("name", "unnamed"),
            generators,
            brackets,
            parameters=tuple(data.get("parameters", ())),
        )

    def __repr__(self):
        return f"LieAlgebra({self.name!r}, dim={self.dim})"


def _linear_combo(value: Scalar, labels) -> dict:
    """Split a Scalar linear in the given labels into label -> coefficient."""
    combo = {}
    remaining = value
    for label in labels:
        coeff_num = value.num.coeff_of_power(label, 1)
        if coeff_num.is_zero:
            continue
        if coeff_num.degree_in(label) or any(
            coeff_num.degree_in(other) for other in labels if other != label
        ):
            raise ValueError(f"expression is not linear in generators: {value}")
        coeff = Scalar(coeff_num, value.den)
        combo[label] = coeff
        remaining = remaining - coeff * Scalar.symbol(label)
    if not remaining.is_zero:
        raise ValueError(f"expression has a generator-free part: {value}")
    return combo


class _Builder:
    def __init__(self, generators):
        self.generators = tuple(generators)
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.table: dict = {}

    def set(self, x: str, y: str, combo: dict):
        i, j = self.index[x], self.index[y]
        entry = {self.index[n]: as_scalar(c) for n, c in combo.items()}
        if i > j:
            i, j = j, i
            entry = {n: -c for n, c in entry.items()}
        self.table[(i, j)] = entry


def make_ck_algebra(w1, w2, name=None) -> LieAlgebra:
    """The two-parameter family of 3d isometry / kinematical algebras."""
    w1 = as_scalar(w1)
    w2 = as_scalar(w2)
    b = _Builder(CK_GENERATORS)
    b.set("J", "P1", {"P2": 1})
    b.set("J", "P2", {"P1": -1})
    b.set("J", "K1", {"K2": 1})
    b.set("J", "K2", {"K1": -1})
    b.set("P1", "P2", {"J": w1 * w2})
    b.set("K1", "K2", {"J": w2})
    b.set("P1", "K1", {"H": w2})
    b.set("P2", "K2", {"H": w2})
    b.set("H", "P1", {"K1": w1})
    b.set("H", "P2", {"K2": w1})
    b.set("H", "K1", {"P1": -1})
    b.set("H", "K2", {"P2": -1})
    params = tuple(sorted(set(w1.variables()) | set(w2.variables())))
    if name is None:
        name = _ck_display_name(w1, w2)
    return LieAlgebra(
        name,
        CK_GENERATORS,
        b.table,
        parameters=params,
        meta={"family": "ck", "w1": w1, "w2": w2},
    )


def make_extended_galilei(m="m", name="ext-galilei") -> LieAlgebra:
    """Galilei with central generator Xi and [P_i, K_i] = m*Xi."""
    m = as_scalar(m)
    gens = GLOBAL_ORDER
    b = _Builder(gens)
    b.set("J", "P1", {"P2": 1})
    b.set("J", "P2", {"P1": -1})
    b.set("J", "K1", {"K2": 1})
    b.set("J", "K2", {"K1": -1})
    b.set("P1", "K1", {"Xi": m})
    b.set("P2", "K2", {"Xi": m})
    b.set("H", "K1", {"P1": -1})
    b.set("H", "K2", {"P2": -1})
    return LieAlgebra(
        name,
        gens,
        b.table,
        parameters=tuple(m.variables()),
        meta={
            "family": "ext-galilei",
            "m": m,
            "w1": Scalar.zero(),
            "w2": Scalar.zero(),
        },
    )


def with_central_generator(g: LieAlgebra, label: str = "Xi") -> LieAlgebra:
    """Direct sum of g with a one-dimensional center."""
    if label in g.generators:
        raise ValueError(f"{label!r} already present in {g.name}")
    return LieAlgebra(
        f"{g.name}+center",
        g.generators + (label,),
        dict(g.brackets),
        parameters=g.parameters,
        meta={**g.meta, "central": label},
    )


# -- structure soundness -----------------------------------------------------


@dataclass
class StructureReport:
    algebra: str
    antisymmetry_ok: bool
    triples_checked: int
    jacobi_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.antisymmetry_ok and not self.jacobi_failures


def check_structure(g: LieAlgebra) -> StructureReport:
    """Brute-force Jacobi check over every generator triple."""
    failures = []
    n = g.dim
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                count += 1
                residual: dict = {}
                for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                    for m, coeff in g.ad_combo(g.bracket(a, b), c).items():
                        acc = residual.get(m, Scalar.zero()) + coeff
                        if acc.is_zero:
                            residual.pop(m, None)
                        else:
                            residual[m] = acc
                if residual:
                    triple = tuple(g.generators[t] for t in (i, j, k))
                    failures.append((triple, residual))
    # antisymmetry holds by the storage convention; self-brackets are absent
    return StructureReport(
        algebra=g.name,
        antisymmetry_ok=True,
        triples_checked=count,
        jacobi_failures=failures,
    )


# -- involutions and decompositions ------------------------------------------


@dataclass(frozen=True)
class Involution:
    """A sign map on generators squaring to the identity."""

    name: str
    signs: dict

    def __post_init__(self):
        if any(s not in (1, -1) for s in self.signs.values()):
            raise ValueError("involution signs must be +1 or -1")

    def sign(self, label: str) -> int:
        return self.signs[label]


@dataclass(frozen=True)
class Decomposition:
    """Index split g = t + k with k the invariant subalgebra part."""

    k: tuple
    t: tuple


def standard_involutions() -> dict:
    """Parity, time-reversal and their product.

    The central generator Xi carries the product of the momentum and
    boost signs, the only assignment compatible with [P_i, K_i] = m*Xi;
    so Xi is even under P and odd under T and PT.
    """
    return {
        "P": Involution("P", {"J": 1, "Xi": 1, "H": 1,
                              "P1": -1, "P2": -1, "K1": -1, "K2": -1}),
        "T": Involution("T", {"J": 1, "Xi": -1, "H": -1,
                              "P1": 1, "P2": 1, "K1": -1, "K2": -1}),
        "PT": Involution("PT", {"J": 1, "Xi": -1, "H": -1,
                                "P1": -1, "P2": -1, "K1": 1, "K2": 1}),
    }


@dataclass
class InvolutionReport:
    involution: str
    is_automorphism: bool
    violations: list
    decomposition: Decomposition


def apply_involution(g: LieAlgebra, inv: Involution) -> InvolutionReport:
    """Check sigma([X,Y]) = [sigma(X), sigma(Y)] and split into eigenspaces."""
    missing = [lab for lab in g.generators if lab not in inv.signs]
    if missing:
        raise ValueError(f"involution {inv.name} misses generators {missing}")
    violations = []
    for (i, j), combo in g.brackets.items():
        si = inv.sign(g.generators[i])
        sj = inv.sign(g.generators[j])
        for n, c in combo.items():
            sn = inv.sign(g.generators[n])
            if si * sj != sn and not c.is_zero:
                violations.append(
                    (g.generators[i], g.generators[j], g.generators[n], c)
                )
    k = tuple(i for i, lab in enumerate(g.generators) if inv.sign(lab) == 1)
    t = tuple(i for i, lab in enumerate(g.generators) if inv.sign(lab) == -1)
    return InvolutionReport(
        involution=inv.name,
        is_automorphism=not violations,
        violations=violations,
        decomposition=Decomposition(k=k, t=t),
    )


@dataclass
class CartanReport:
    hh_ok: bool
    hp_ok: bool
    pp_ok: bool
    p_abelian: bool
    violations: list

    @property
    def ok(self) -> bool:
        return self.hh_ok and self.hp_ok and self.pp_ok


def subalgebra_closes(g: LieAlgebra, indices) -> bool:
    idx = set(indices)
    for i in idx:
        for j in idx:
            if i < j and any(n not in idx for n in g.bracket(i, j)):
                return False
    return True


def cartan_check(g: LieAlgebra, d: Decomposition) -> CartanReport:
    """Verify [h,h] in h, [h,p] in p, [p,p] in h for h = k, p = t."""
    h, p = set(d.k), set(d.t)
    if h | p != set(range(g.dim)) or h & p:
        raise ValueError("decomposition must partition the generators")
    checks = {"hh": True, "hp": True, "pp": True}
    violations = []
    p_abelian = True
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            combo = g.bracket(i, j)
            if i in h and j in h:
                kind, allowed = "hh", h
            elif i in p and j in p:
                kind, allowed = "pp", h
                if combo:
                    p_abelian = False
            else:
                kind, allowed = "hp", p
            bad = [n for n in combo if n not in allowed]
            if bad:
                checks[kind] = False
                violations.append(
                    (kind, g.generators[i], g.generators[j],
                     tuple(g.generators[n] for n in bad))
                )
    return CartanReport(
        hh_ok=checks["hh"],
        hp_ok=checks["hp"],
        pp_ok=checks["pp"],
        p_abelian=p_abelian,
        violations=violations,
    )


# -- contractions -------------------------------------------------------------

CONTRACTION_SCALED = {
    "space-time": ("H", "P1", "P2"),
    "speed-space": ("P1", "P2", "K1", "K2"),
}


def contract(g: LieAlgebra, kind: str) -> LieAlgebra:
    """Inonu-Wigner contraction: rescale generators, keep the epsilon-free part.

    space-time rescales (H, P_i) and sends w1 to 0; speed-space rescales
    (P_i, K_i) and sends w2 to 0.
    """
    if kind not in CONTRACTION_SCALED:
        raise ValueError(f"unknown contraction kind {kind!r}")
    scaled = {g.index(lab) for lab in CONTRACTION_SCALED[kind] if lab in g._index}
    new_table = {}
    for (i, j), combo in g.brackets.items():
        power_ij = (i in scaled) + (j in scaled)
        kept = {}
        for n, c in combo.items():
            power = power_ij - (n in scaled)
            if power < 0:
                raise ContractionError(
                    f"bracket [{g.generators[i]},{g.generators[j]}] has a "
                    f"negative epsilon power on {g.generators[n]}"
                )
            if power == 0:
                kept[n] = c
        if kept:
            new_table[(i, j)] = kept
    meta = dict(g.meta)
    axis = "w1" if kind == "space-time" else "w2"
    if axis in meta:
        meta[axis] = Scalar.zero()
    name = f"{g.name}->{kind}"
    if meta.get("family") == "ck":
        name = _ck_display_name(meta["w1"], meta["w2"])
    return LieAlgebra(name, g.generators, new_table, g.parameters, meta)


# -- the nine-cell catalog -----------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    signs: tuple
    algebra: str
    space: str
    dim_s1: int = 3
    dim_s2: int = 4
    curv_s1: str = "w1"
    curv_s2: str = "w2"
    notes: str = ""


_SIGN = {"+": 1, "0": 0, "-": -1, 1: 1, 0: 0, -1: -1}

CATALOG = {
    (1, 1): CatalogEntry((1, 1), "so(4)", "3d Elliptic space",
                         notes="w1 = +1/R^2"),
    (0, 1): CatalogEntry((0, 1), "iso(3)", "3d Euclidean space"),
    (-1, 1): CatalogEntry((-1, 1), "so(3,1)", "3d Hyperbolic space",
                          notes="w1 = -1/R^2"),
    (1, 0): CatalogEntry((1, 0), "t4(so(2)+so(2))",
                         "Oscillating NH (2+1)d space-time",
                         notes="w1 = +1/R^2; absolute time (c = infinity)"),
    (0, 0): CatalogEntry((0, 0), "iiso(2)", "Galilean (2+1)d space-time",
                         notes="absolute time (c = infinity)"),
    (-1, 0): CatalogEntry((-1, 0), "t4(so(2)+so(1,1))",
                          "Expanding NH (2+1)d space-time",
                          notes="w1 = -1/R^2; absolute time (c = infinity)"),
    (1, -1): CatalogEntry((1, -1), "so(2,2)", "Anti-de Sitter (2+1)d space-time",
                          notes="w1 = +1/R^2; w2 = -1/c^2"),
    (0, -1): CatalogEntry((0, -1), "iso(2,1)", "Minkowskian (2+1)d space-time",
                          notes="w2 = -1/c^2"),
    (-1, -1): CatalogEntry((-1, -1), "so(3,1)", "de Sitter (2+1)d space-time",
                           notes="w1 = -1/R^2; w2 = -1/c^2"),
}

# off-grid tenth entry: the centrally extended Galilei algebra
EXTENDED_GALILEI_ENTRY = CatalogEntry(
    (0, 0),
    "iiso(2)-overline",
    "Extended Galilei (2+1)d space-time (central extension by Xi)",
    notes="off-grid entry; mass parameter m",
)


def _scalar_sign(value: Scalar):
    if value.is_zero:
        return 0
    num = value.num.as_fraction()
    den = value.den.as_fraction()
    if num is None or den is None:
        return None
    q = num / den
    return 1 if q > 0 else -1


def _ck_display_name(w1: Scalar, w2: Scalar) -> str:
    s1, s2 = _scalar_sign(w1), _scalar_sign(w2)
    if s1 is not None and s2 is not None:
        return CATALOG[(s1, s2)].algebra
    return f"ck(w1={w1}, w2={w2})"


def catalog_lookup(key) -> CatalogEntry:
    """Entry by sign pair like ('+','-') / (1,-1) or by algebra name."""
    if isinstance(key, str):
        if key == EXTENDED_GALILEI_ENTRY.algebra:
            return EXTENDED_GALILEI_ENTRY
        matches = [e for e in CATALOG.values() if e.algebra == key]
        if not matches:
            raise KeyError(f"no catalog entry named {key!r}")
        return matches[0]
    try:
        signs = (_SIGN[key[0]], _SIGN[key[1]])
    except (KeyError, IndexError, TypeError):
        raise KeyError(f"bad catalog key {key!r}") from None
    return CATALOG[signs]


def catalog_arrows() -> list:
    """(source signs, target signs, kind, direction) for all grid edges.

    12 contraction arrows (toward a zero coefficient) and the 12 reverse
    expansion arrows.
    """
    arrows = []
    for s2 in (1, 0, -1):
        for s1 in (1, -1):
            arrows.append(((s1, s2), (0, s2), "space-time", "contraction"))
    for s1 in (1, 0, -1):
        for s2 in (1, -1):
            arrows.append(((s1, s2), (s1, 0), "speed-space", "contraction"))
    arrows.extend(
        (target, source, kind, "expansion")
        for source, target, kind, _ in list(arrows)
    )
    return arrows


BUILTIN_NAMES = {
    "galilei": (0, 0),
    "euclid3": (0, 1),
    "poincare": (0, -1),
    "nh-plus": (1, 0),
    "nh-minus": (-1, 0),
    "so4": (1, 1),
    "so31-hyp": (-1, 1),
    "so31-ds": (-1, -1),
    "so22": (1, -1),
}


def builtin_algebra(name: str) -> LieAlgebra:
    """Construct one of the bundled algebras by CLI name."""
    if name == "ext-galilei":
        return make_extended_galilei()
    if name in BUILTIN_NAMES:
        s1, s2 = BUILTIN_NAMES[name]
        return make_ck_algebra(s1, s2, name=name)
    if name == "ck":
        return make_ck_algebra("w1", "w2", name="ck")
    raise KeyError(
        f"unknown algebra {name!r}; choose from "
        f"{sorted(BUILTIN_NAMES) + ['ext-galilei', 'ck']}"
    )
