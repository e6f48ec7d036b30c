"""HTTP service exposing the report documents.

Run with ``uvicorn godeaux.service:app``.  Every endpoint returns the same
document the CLI prints with ``--format json``.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query

from . import __version__, report
from .catalog import AmbiguousMatch, NoMatch
from .config import ConfigError
from .schemas import ReportDocument
from .strata import PipelineError

app = FastAPI(title="godeaux", version=__version__)


def _run(builder, *args, **kwargs) -> dict:
    try:
        return builder(*args, **kwargs)
    except (report.UsageError, NoMatch) as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except (PipelineError, ConfigError, AmbiguousMatch) as exc:
        raise HTTPException(status_code=500, detail=f"internal consistency failure: {exc}") from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "tool_version": __version__}


@app.get("/strata/{nu}", response_model=ReportDocument)
def strata(nu: int, include_h: bool = True) -> dict:
    return _run(report.strata_report, nu, include_h)


@app.get("/inertia/{nu}", response_model=ReportDocument)
def inertia(nu: int, include_h: bool = True) -> dict:
    return _run(report.inertia_report, nu, include_h)


@app.get("/equations/{nu}", response_model=ReportDocument)
def equations(nu: int, twist: int = Query(...), include_h: bool = True) -> dict:
    return _run(report.equations_report, nu, twist, include_h)


@app.get("/ambient/{nu}", response_model=ReportDocument)
def ambient(nu: int) -> dict:
    return _run(report.ambient_report, nu)


@app.get("/group-id/{nu}", response_model=ReportDocument)
def group_id(nu: int, generators: str = "", elements: bool = False) -> dict:
    return _run(report.group_id_report, nu, generators, elements)
