import socket
import threading
import time

import pytest
from fastapi.testclient import TestClient

from godeaux import cli, report
from godeaux.schemas import validate_document
from godeaux.service import app

client = TestClient(app)


def test_health():
    r = client.get("/health")
    assert r.status_code == 200 and r.json()["status"] == "ok"


@pytest.mark.parametrize(
    "path,expected",
    [
        ("/strata/5", report.strata_report(5)),
        ("/strata/3?include_h=false", report.strata_report(3, False)),
        ("/inertia/3", report.inertia_report(3)),
        ("/equations/5?twist=4", report.equations_report(5, 4)),
        ("/ambient/4", report.ambient_report(4)),
        ("/group-id/4?generators=(2,2,0,0);(0,0,0,1)", report.group_id_report(4, "(2,2,0,0);(0,0,0,1)")),
    ],
)
def test_endpoints_return_the_documents(path, expected):
    r = client.get(path)
    assert r.status_code == 200
    assert r.json() == expected
    validate_document(r.json())


@pytest.mark.parametrize("path", ["/strata/7", "/equations/5?twist=5", "/group-id/5?generators=(1)"])
def test_bad_requests(path):
    assert client.get(path).status_code == 400


def test_missing_twist_is_rejected():
    assert client.get("/equations/5").status_code == 422


def _free_port():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


@pytest.fixture(scope="module")
def server():
    uvicorn = pytest.importorskip("uvicorn")
    port = _free_port()
    srv = uvicorn.Server(uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error"))
    thread = threading.Thread(target=srv.run, daemon=True)
    thread.start()
    for _ in range(100):
        if srv.started:
            break
        time.sleep(0.05)
    yield f"http://127.0.0.1:{port}"
    srv.should_exit = True
    thread.join(timeout=5)


def test_cli_through_the_server(server, capsys):
    local = cli.main(["strata", "--nu", "4", "--format", "json"])
    local_out = capsys.readouterr().out
    remote = cli.main(["--server", server, "strata", "--nu", "4", "--format", "json"])
    remote_out = capsys.readouterr().out
    assert local == remote == 0
    assert local_out == remote_out


def test_cli_server_errors_map_to_usage(server, capsys):
    assert cli.main(["--server", server, "equations", "--nu", "5", "--twist", "5"]) == 1
