"""
Testes da API REST FastAPI.

Os comandos rodam de verdade (sem mocks): os sistemas usados são pequenos.
"""

from unittest.mock import patch

import pytest
from fastapi.testclient import TestClient

from darbouxkit import __version__
from darbouxkit.analise.catalogo import CATALOGO
from darbouxkit.api.app import create_app
from darbouxkit.cli.parser import parse_poly

XYZ = ["x", "y", "z"]

# ============================================================================
# Fixtures
# ============================================================================


@pytest.fixture
def app():
    """Cria app FastAPI sem Sentry."""
    with (
        patch("darbouxkit.api.app.settings") as mock_settings,
        patch("darbouxkit.api.routes.health.settings", mock_settings),
    ):
        mock_settings.app_name = "DarbouxKit API"
        mock_settings.app_version = "0.1.0"
        mock_settings.sentry_dsn = None
        application = create_app()
        yield application


@pytest.fixture
def client(app):
    """Client síncrono para testes (executa o lifespan)."""
    with TestClient(app, raise_server_exceptions=True) as c:
        yield c


def _analise(client: TestClient, comando: str, **corpo):
    return client.post(f"/api/v1/analise/{comando}", json=corpo)


# ============================================================================
# Testes de health check
# ============================================================================


class TestHealthCheck:
    def test_health_ok(self, client: TestClient) -> None:
        """Health check retorna status ok."""
        response = client.get("/health")
        assert response.status_code == 200
        data = response.json()
        assert data["status"] == "ok"
        assert data["servico"] == "DarbouxKit API"
        assert data["versao"] == "0.1.0"
        assert data["autoteste"] is True
        assert data["sistemas_catalogo"] == len(CATALOGO)
        assert data["darbouxkit"] == __version__

    def test_health_degradado(self, client: TestClient) -> None:
        with patch("darbouxkit.api.routes.health.autoteste", return_value=False):
            data = client.get("/health").json()
        assert data["status"] == "degradado"
        assert data["autoteste"] is False

    def test_health_head(self, client: TestClient) -> None:
        assert client.head("/health").status_code == 200


# ============================================================================
# Testes do catálogo
# ============================================================================


class TestCatalogo:
    def test_listar_catalogo(self, client: TestClient) -> None:
        """GET /api/v1/catalogo retorna todos os sistemas."""
        response = client.get("/api/v1/catalogo")
        assert response.status_code == 200
        data = response.json()
        assert data["total"] == len(CATALOGO)
        nomes = [s["nome"] for s in data["sistemas"]]
        assert nomes == sorted(nomes)
        assert "prop9a" in nomes

    def test_sistema_por_alias(self, client: TestClient) -> None:
        response = client.get("/api/v1/catalogo/PARALELO_221")
        assert response.status_code == 200
        data = response.json()
        assert data["nome"] == "prop11"
        assert data["modo"] == "sphere"

    def test_sistema_nao_encontrado(self, client: TestClient) -> None:
        response = client.get("/api/v1/catalogo/lorenz")
        assert response.status_code == 404
        assert "lorenz" in response.json()["detail"]


# ============================================================================
# Testes de análise
# ============================================================================


class TestAnalise:
    def test_meridianos_por_nome(self, client: TestClient) -> None:
        response = _analise(client, "meridians", nome="prop9a")
        assert response.status_code == 200
        data = response.json()
        assert data["command"] == "meridians"
        assert data["results"]["count"] == 3
        assert data["results"]["exit_code"] == 0
        encontrados = {parse_poly(m["f"], XYZ) for m in data["results"]["meridians"]}
        assert parse_poly("x + y", XYZ) in encontrados

    def test_sistema_explicito(self, client: TestClient) -> None:
        sistema = {"variables": ["x", "y"], "components": ["x", "2*y"]}
        response = _analise(client, "hyperplanes", sistema=sistema)
        assert response.status_code == 200
        assert response.json()["results"]["attained"] is True

    def test_resposta_negativa_tem_status_200(self, client: TestClient) -> None:
        response = _analise(client, "cofactor", nome="prop11", parametros={"surface": "x"})
        assert response.status_code == 200
        results = response.json()["results"]
        assert results["invariant"] is False
        assert results["exit_code"] == 1

    def test_cofator_com_parametros(self, client: TestClient) -> None:
        response = _analise(client, "cofactor", nome="prop9a", parametros={"surface": "x + y"})
        assert response.status_code == 200
        assert response.json()["input_echo"]["surface"] == "x + y"

    def test_comando_desconhecido(self, client: TestClient) -> None:
        response = _analise(client, "integrar", nome="prop9a")
        assert response.status_code == 400

    def test_nome_desconhecido(self, client: TestClient) -> None:
        response = _analise(client, "meridians", nome="inexistente")
        assert response.status_code == 400
        assert "inexistente" in response.json()["detail"]

    def test_erro_de_sintaxe(self, client: TestClient) -> None:
        sistema = {"variables": ["x", "y"], "components": ["2x", "y"]}
        response = _analise(client, "hyperplanes", sistema=sistema)
        assert response.status_code == 400
        assert "posição 1" in response.json()["detail"]

    def test_campo_nao_tangente(self, client: TestClient) -> None:
        sistema = {"variables": XYZ, "components": ["1", "0", "0"], "mode": "sphere"}
        response = _analise(client, "meridians", sistema=sistema)
        assert response.status_code == 422

    def test_corpo_sem_sistema(self, client: TestClient) -> None:
        """Validação do pydantic: exatamente um de sistema ou nome."""
        response = _analise(client, "meridians")
        assert response.status_code == 422

    def test_corpo_com_sistema_e_nome(self, client: TestClient) -> None:
        sistema = {"variables": ["x", "y"], "components": ["x", "y"]}
        response = _analise(client, "meridians", sistema=sistema, nome="prop9a")
        assert response.status_code == 422
