"""
Schemas pydantic dos arquivos de cenário (JSON).

Validação rigorosa: campos desconhecidos são rejeitados, tempos de eventos
não decrescem e toda matriz é uma lista de linhas cujas entradas são
números reais ou pares [re, im].
"""

from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Entry = Union[float, List[float]]
MatrixRows = List[List[Entry]]


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _check_entry(entry: Entry) -> None:
    if isinstance(entry, list) and len(entry) != 2:
        raise ValueError("complex entries must be [re, im] pairs")


def check_matrix(rows: MatrixRows) -> MatrixRows:
    if not rows or not rows[0]:
        raise ValueError("matrix must have at least one row and one column")
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise ValueError("matrix rows must have equal length")
        for entry in row:
            _check_entry(entry)
    return rows


# =============================================================================
# SISTEMAS
# =============================================================================

class RotationSystem(StrictModel):
    kind: Literal["rotation-2d"]
    omega: float = Field(..., description="Frequência angular ω")
    hbar: float = Field(1.0, gt=0)


class ExponentialSystem(StrictModel):
    kind: Literal["exponential-2d"]
    tau: float = Field(..., gt=0, description="Escala de tempo τ da matriz e^{−t²/τ²}")
    hbar: float = Field(1.0, gt=0)


class ConstantHamiltonianSystem(StrictModel):
    kind: Literal["constant-hamiltonian"]
    hamiltonian: MatrixRows
    hbar: float = Field(1.0, gt=0)

    @field_validator("hamiltonian")
    @classmethod
    def validate_hamiltonian(cls, v: MatrixRows) -> MatrixRows:
        return check_matrix(v)


class PiecewiseHamiltonianSystem(StrictModel):
    kind: Literal["piecewise-constant-hamiltonian"]
    hamiltonians: List[MatrixRows] = Field(..., min_length=1)
    starts: List[float] = Field(..., min_length=1)
    hbar: float = Field(1.0, gt=0)

    @field_validator("hamiltonians")
    @classmethod
    def validate_blocks(cls, v: List[MatrixRows]) -> List[MatrixRows]:
        return [check_matrix(rows) for rows in v]


class SampledGridSystem(StrictModel):
    kind: Literal["sampled-grid"]
    times: List[float] = Field(..., min_length=2)
    unitaries: List[MatrixRows] = Field(..., min_length=2)
    hbar: float = Field(1.0, gt=0)

    @field_validator("unitaries")
    @classmethod
    def validate_unitaries(cls, v: List[MatrixRows]) -> List[MatrixRows]:
        return [check_matrix(rows) for rows in v]


class TransitionSample(StrictModel):
    """Γ(t) dada diretamente, ou Θ(t) de onde Γ(t) sai pelo dicionário"""
    time: float
    gamma: Optional[MatrixRows] = None
    theta: Optional[MatrixRows] = None

    @model_validator(mode="after")
    def exactly_one(self) -> "TransitionSample":
        if (self.gamma is None) == (self.theta is None):
            raise ValueError("give exactly one of 'gamma' or 'theta'")
        check_matrix(self.gamma if self.gamma is not None else self.theta)
        return self


class TransitionSystem(StrictModel):
    """Sistema estocástico generalizado descrito por amostras Γ(t) ou Θ(t)"""
    kind: Literal["transition-samples"]
    samples: List[TransitionSample] = Field(..., min_length=1)


class FactorSpec(StrictModel):
    name: str = Field(..., min_length=1, max_length=64)
    system: "FamilySystem"


class ProductSystem(StrictModel):
    kind: Literal["product"]
    factors: List[FactorSpec] = Field(..., min_length=1)


class DivisionSystem(StrictModel):
    """Sujeito ⊗ ambiente com evento de divisão em t_prime"""
    kind: Literal["division-event"]
    subject_pre: MatrixRows
    environment_dim: int = Field(..., ge=1)
    e_of: List[int]
    subject_post: "FamilySystem"
    environment_post: "FamilySystem"
    t_prime: float = Field(1.0, gt=0)

    @field_validator("subject_pre")
    @classmethod
    def validate_subject_pre(cls, v: MatrixRows) -> MatrixRows:
        return check_matrix(v)


FamilySystem = Annotated[
    Union[
        RotationSystem,
        ExponentialSystem,
        ConstantHamiltonianSystem,
        PiecewiseHamiltonianSystem,
        SampledGridSystem,
        ProductSystem,
        DivisionSystem,
    ],
    Field(discriminator="kind"),
]

SystemSpec = Annotated[
    Union[
        RotationSystem,
        ExponentialSystem,
        ConstantHamiltonianSystem,
        PiecewiseHamiltonianSystem,
        SampledGridSystem,
        ProductSystem,
        DivisionSystem,
        TransitionSystem,
    ],
    Field(discriminator="kind"),
]

FactorSpec.model_rebuild()
ProductSystem.model_rebuild()
DivisionSystem.model_rebuild()


# =============================================================================
# CONDIÇÃO INICIAL, EVENTOS E CONSULTAS
# =============================================================================

class InitialSpec(StrictModel):
    configuration: Optional[int] = Field(None, ge=0)
    probabilities: Optional[List[float]] = None

    @model_validator(mode="after")
    def exactly_one(self) -> "InitialSpec":
        if (self.configuration is None) == (self.probabilities is None):
            raise ValueError("give exactly one of 'configuration' or 'probabilities'")
        return self


class DivisionEventSpec(StrictModel):
    kind: Literal["division"]
    time: float = Field(..., ge=0)


class MeasurementEventSpec(StrictModel):
    kind: Literal["measurement"]
    time: float = Field(..., ge=0)
    observable: MatrixRows
    device_dim: Optional[int] = Field(None, ge=1)
    environment_dim: Optional[int] = Field(None, ge=1)
    d_of: Optional[List[int]] = None
    e_of: Optional[List[int]] = None

    @field_validator("observable")
    @classmethod
    def validate_observable(cls, v: MatrixRows) -> MatrixRows:
        return check_matrix(v)


EventSpec = Annotated[Union[DivisionEventSpec, MeasurementEventSpec], Field(discriminator="kind")]


class QuerySpec(StrictModel):
    """
    Consulta em um instante. ``quantity`` é validada pelo loader para que
    um nome desconhecido seja reportado com sua localização.
    """
    time: float = Field(..., ge=0)
    quantity: str = Field(..., min_length=1)
    observable: Optional[MatrixRows] = None
    t_primes: Optional[List[float]] = None
    j0: Optional[int] = Field(None, ge=0)
    draws: Optional[int] = Field(None, ge=1)
    label: Optional[str] = Field(None, pattern=r"^[\w\-]+$", max_length=64)


class Tolerances(StrictModel):
    structural: Optional[float] = Field(None, gt=0)
    probability: Optional[float] = Field(None, gt=0)
    degeneracy: Optional[float] = Field(None, gt=0)


# =============================================================================
# CENÁRIO
# =============================================================================

class ScenarioSpec(StrictModel):
    schema_version: int = Field(..., ge=1)
    name: str = Field(..., min_length=1, max_length=100, pattern=r"^[\w\-\.]+$")
    description: Optional[str] = Field(None, max_length=2000)
    system: SystemSpec
    initial: InitialSpec = Field(default_factory=lambda: InitialSpec(configuration=0))
    events: List[EventSpec] = Field(default_factory=list)
    queries: List[QuerySpec] = Field(default_factory=list)
    check_times: List[float] = Field(default_factory=lambda: [1.0])
    seed: Optional[int] = Field(None, ge=0, lt=2 ** 64)
    tolerances: Optional[Tolerances] = None

    @field_validator("events")
    @classmethod
    def validate_event_order(cls, v: List[EventSpec]) -> List[EventSpec]:
        times = [event.time for event in v]
        if any(b < a for a, b in zip(times, times[1:])):
            raise ValueError("event times must be non-decreasing")
        return v
