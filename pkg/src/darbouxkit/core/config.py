"""
darbouxkit.core.config
~~~~~~~~~~~~~~~~~~~~~~

Configuração centralizada usando pydantic-settings.

A CLI usa Settings, que lê somente argumentos explícitos (arquivo de entrada e
flags): nenhum valor vem do ambiente, para que os relatórios sejam reprodutíveis.
A API HTTP usa ApiSettings, que também aceita variáveis DARBOUXKIT_* e .env.
"""

from typing import Optional, Tuple

from pydantic_settings import BaseSettings, PydanticBaseSettingsSource


class Settings(BaseSettings):
    """Parâmetros ajustáveis das análises."""

    # Aplicação
    app_name: str = "DarbouxKit"
    app_version: str = "0.1.0"
    debug: bool = False

    # Integração numérica (RK4)
    tolerancia_numerica: float = 1e-6
    passo_integracao: float = 1e-3
    horizonte: float = 10.0
    tolerancia_esfera_inicial: float = 1e-12
    tolerancia_deriva: float = 1e-8
    faixa_guarda: float = 1e-9

    # Lotes de tentativas
    tentativas_numericas: int = 10
    max_concorrencia: int = 4
    semente: int = 0

    # Busca randomizada de meridianos/hiperplanos (n >= 3)
    tentativas_meridianos: int = 8

    # Amostragem de campos tangentes
    amostras: int = 100

    # Sentry (apenas API)
    sentry_dsn: Optional[str] = None

    model_config = {"extra": "ignore"}

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


class ApiSettings(Settings):
    """Configurações do serviço HTTP (lê DARBOUXKIT_* do ambiente)."""

    app_name: str = "DarbouxKit API"

    model_config = {"env_prefix": "DARBOUXKIT_", "env_file": ".env", "extra": "ignore"}

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> Tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings, env_settings, dotenv_settings, file_secret_settings)


settings = ApiSettings()
