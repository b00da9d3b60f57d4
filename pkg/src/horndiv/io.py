"""JSON schemas (pydantic) and converters between JSON and library objects."""

from __future__ import annotations

from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .errors import HornError
from .lr import SetTriple
from .matrix import PidMatrix, clear_denominators
from .modules import Submodule, TorsionModule
from .rings import ring_from_name
from .valuation import ExponentVector

Scalar = Union[int, str, List[int]]


class InputError(HornError, ValueError):
    """Malformed input; ``pointer`` names the offending field."""

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer}: {message}" if pointer else message)
        self.pointer = pointer


class Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class EVModel(Strict):
    atoms: Dict[str, int] = Field(default_factory=dict)

    @field_validator("atoms")
    @classmethod
    def _labels(cls, v):
        for k, e in v.items():
            if not k.isdigit():
                raise ValueError(f"atom label {k!r} must be a nonnegative integer")
            if e < 0:
                raise ValueError(f"negative exponent at atom {k}")
        return v


class ModuleModel(Strict):
    pid: str = "int"
    theta: List[EVModel]

    @field_validator("pid")
    @classmethod
    def _pid(cls, v):
        ring_from_name(v)
        return v


class SubmoduleModel(Strict):
    generators: List[List[Scalar]] = Field(default_factory=list)


class MatrixModel(Strict):
    pid: str = "int"
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    entries: List[Scalar]

    @model_validator(mode="after")
    def _size(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")
        return self


# -- outputs ---------------------------------------------------------------------

class SnfOut(Strict):
    pid: str
    factors: List[Scalar]
    U: MatrixModel
    V: MatrixModel
    D: MatrixModel


class LrOut(Strict):
    lam: List[int]
    mu: List[int]
    nu: List[int]
    c: int


class TripleModel(Strict):
    N: int
    r: int
    I: List[int]
    J: List[int]
    K: List[int]


class TriplesOut(Strict):
    N: int
    r: int
    triples: List[TripleModel]


class CheckModel(Strict):
    name: str
    passed: bool = Field(alias="pass")
    detail: str = ""
    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class WitnessOut(Strict):
    Q: Optional[MatrixModel]
    checks: List[CheckModel]
    strategy: Optional[str]
    seed: int
    triple: TripleModel
    perturbations: List[Dict[str, Any]] = Field(default_factory=list)


class ReportOut(Strict):
    triple: TripleModel
    status: str
    seed: int
    lam: Dict[str, List[int]]
    mu: Dict[str, List[int]]
    nu: Dict[str, List[int]]
    beta: List[EVModel]
    beta_sub: List[EVModel]
    beta_quot: List[EVModel]
    saturation: bool
    checks: List[CheckModel]
    witness: Optional[WitnessOut] = None
    special: Optional[SubmoduleModel] = None
    complements: Optional[Dict[str, SubmoduleModel]] = None


class AnalyzeOut(Strict):
    module: ModuleModel
    sub: SubmoduleModel
    reports: List[ReportOut]


class RealizeOut(Strict):
    module: ModuleModel
    sub: SubmoduleModel
    mu: List[EVModel]
    nu: List[EVModel]


def pointer(err: ValidationError) -> str:
    e = err.errors()[0]
    return "/" + "/".join(str(p) for p in e["loc"])


def parse(model, data, where=""):
    try:
        return model.model_validate(data)
    except ValidationError as err:
        e = err.errors()[0]
        raise InputError(e["msg"], (where + pointer(err)) if where else pointer(err)) from None


# -- conversions -------------------------------------------------------------------

def ev_to_json(ev: ExponentVector) -> dict:
    return {"atoms": {str(a): e for a, e in ev.items()}}


def ev_from_model(m: EVModel) -> ExponentVector:
    return ExponentVector({int(k): v for k, v in m.atoms.items()})


def module_from_json(data, where="module") -> TorsionModule:
    m = parse(ModuleModel, data, where)
    ring = ring_from_name(m.pid)
    try:
        return TorsionModule(ring, [ev_from_model(t) for t in m.theta])
    except HornError as e:
        raise InputError(str(e), f"{where}/theta") from None
    except Exception as e:
        raise InputError(str(e), f"{where}/theta") from None


def module_to_json(M: TorsionModule) -> dict:
    return {"pid": M.ring.name, "theta": [ev_to_json(t) for t in M.theta]}


def _scalar(ring, x, where):
    try:
        return ring.decode(x)
    except (TypeError, ValueError) as e:
        raise InputError(str(e), where) from None


def submodule_from_json(M: TorsionModule, data, where="sub") -> Submodule:
    m = parse(SubmoduleModel, data, where)
    gens = []
    for i, g in enumerate(m.generators):
        if len(g) != M.N:
            raise InputError(f"generator has length {len(g)}, module rank is {M.N}", f"{where}/generators/{i}")
        gens.append([_scalar(M.ring, x, f"{where}/generators/{i}/{j}") for j, x in enumerate(g)])
    return Submodule(M, gens)


def submodule_to_json(S: Submodule) -> dict:
    R = S.parent.ring
    return {"generators": [[R.encode(x) for x in g] for g in S.generators]}


def matrix_from_json(data, where="matrix") -> PidMatrix:
    m = parse(MatrixModel, data, where)
    ring = ring_from_name(m.pid)
    vals = [_scalar(ring, x, f"{where}/entries/{i}") for i, x in enumerate(m.entries)]
    return PidMatrix(ring, [vals[i * m.cols:(i + 1) * m.cols] for i in range(m.rows)])


def matrix_to_json(A: PidMatrix) -> dict:
    R = A.ring
    return {"pid": R.name, "rows": A.nrows, "cols": A.ncols,
            "entries": [R.encode(x) for r in A.rows for x in r]}


def subspace_to_json(ring, Q) -> dict | None:
    if not Q.rows:
        return None
    rows = [clear_denominators(ring, v) for v in Q.rows]
    return matrix_to_json(PidMatrix(ring, rows))


def triple_to_json(T: SetTriple) -> dict:
    return {"N": T.N, "r": T.r, "I": list(T.I), "J": list(T.J), "K": list(T.K)}


def parse_triple(text: str, N: int) -> SetTriple:
    parts = text.split(";")
    if len(parts) != 3:
        raise InputError("triple must look like I;J;K with comma-separated members", "--triple")
    try:
        sets = [tuple(int(x) for x in p.split(",") if x.strip()) for p in parts]
    except ValueError:
        raise InputError("set members must be integers", "--triple") from None
    try:
        return SetTriple(N, len(sets[0]), *sets)
    except ValueError as e:
        raise InputError(str(e), "--triple") from None


def parse_parts(text: str | None, flag: str) -> tuple:
    if text is None or not text.strip():
        return ()
    try:
        parts = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError("parts must be comma-separated integers", flag) from None
    if any(p < 0 for p in parts):
        raise InputError("parts must be nonnegative", flag)
    return tuple(sorted((p for p in parts if p), reverse=True))


def parts_json(d: dict) -> dict:
    return {str(a): list(p) for a, p in sorted(d.items())}


def checks_json(checks) -> list:
    return [{"name": c["name"], "pass": c["pass"], "detail": c.get("detail", "")} for c in checks]


def report_to_json(rep) -> dict:
    R = rep.M.ring
    w = None
    if rep.witness is not None:
        w = {"Q": subspace_to_json(R, rep.witness.Q), "checks": [], "strategy": rep.witness.strategy,
             "seed": rep.seed, "triple": triple_to_json(rep.triple), "perturbations": rep.perturbations}
    comps = None
    if rep.complements is not None:
        comps = {}
        for k, v in rep.complements.items():
            sub = v[1] if isinstance(v, tuple) else v
            comps[k] = submodule_to_json(sub)
    return {
        "triple": triple_to_json(rep.triple),
        "status": rep.status,
        "seed": rep.seed,
        "lam": parts_json(rep.lam), "mu": parts_json(rep.mu), "nu": parts_json(rep.nu),
        "beta": [ev_to_json(b) for b in rep.beta],
        "beta_sub": [ev_to_json(b) for b in rep.beta1],
        "beta_quot": [ev_to_json(b) for b in rep.beta2],
        "saturation": rep.saturation,
        "checks": checks_json(rep.checks),
        "witness": w,
        "special": submodule_to_json(rep.special) if rep.special is not None else None,
        "complements": comps,
    }


def roundtrip(model, data: dict) -> dict:
    """Validate an output document against its schema and dump it back."""
    return model.model_validate(data).model_dump(by_alias=True)
