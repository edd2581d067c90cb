"""
Configuração centralizada da biblioteca e da CLI.
Valores vêm de variáveis de ambiente ou de um arquivo .env.
"""

from functools import lru_cache
from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """
    Configurações da aplicação.
    Usa pydantic-settings para validação e carregamento de .env
    """

    # ==========================================================================
    # APP
    # ==========================================================================
    APP_NAME: str = "Correspondência Estocástico-Quântica"
    APP_VERSION: str = "1.0.0"

    # ==========================================================================
    # OBSERVABILITY
    # ==========================================================================
    LOG_LEVEL: str = "WARNING"
    LOG_JSON: bool = True

    # ==========================================================================
    # TOLERÂNCIAS NUMÉRICAS
    # ==========================================================================
    # Padrões dos cenários; o bloco "tolerances" do arquivo e --tol têm precedência
    STRUCTURAL_TOL: float = Field(default=1e-10, description="Unitariedade, axiomas de PVM")
    PROBABILITY_TOL: float = Field(default=1e-12, description="Simplex de probabilidades")
    DEGENERACY_TOL: float = 1e-8
    GRAM_SCHMIDT_REJECT: float = 1e-8
    DIVISION_ZERO_TOL: float = 1e-10

    # ==========================================================================
    # DINÂMICA
    # ==========================================================================
    FINITE_DIFFERENCE_DT: float = 1e-5
    RK4_STEPS: int = 1000

    # ==========================================================================
    # AMOSTRAGEM E SAÍDA
    # ==========================================================================
    DEFAULT_SEED: Optional[int] = Field(
        default=None,
        description="Sem padrão: caminhos de amostragem exigem semente explícita",
    )
    CSV_FLOAT_FORMAT: str = "%.17g"
    OUTPUT_DIR: str = "out"
    SCENARIO_SCHEMA_VERSION: int = 1
    MAX_STINESPRING_DIM: int = 4

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True
        extra = "ignore"

    def validate_runtime_settings(self) -> None:
        """Valida parâmetros numéricos antes de qualquer cálculo."""
        for name in (
            "STRUCTURAL_TOL",
            "PROBABILITY_TOL",
            "DEGENERACY_TOL",
            "GRAM_SCHMIDT_REJECT",
            "DIVISION_ZERO_TOL",
            "FINITE_DIFFERENCE_DT",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.RK4_STEPS < 1:
            raise ValueError("RK4_STEPS must be at least 1")
        if self.MAX_STINESPRING_DIM < 1:
            raise ValueError("MAX_STINESPRING_DIM must be at least 1")


@lru_cache()
def get_settings() -> Settings:
    """
    Singleton para configurações.
    Cached para evitar re-leitura do .env a cada comando.
    """
    settings = Settings()
    settings.validate_runtime_settings()
    return settings
