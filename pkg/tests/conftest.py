from __future__ import annotations

import json
from pathlib import Path

import pytest

from critiq.model import DesignContext, parse_context, parse_document
from critiq.providers import DeterministicProvider

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "critiq" / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def fixture_json(name: str) -> dict:
    return json.loads(fixture_text(name))


@pytest.fixture(scope="session")
def checkout_doc():
    return parse_document(fixture_text("checkout.json"))


@pytest.fixture(scope="session")
def checkout_clean_doc():
    return parse_document(fixture_text("checkout_clean.json"))


@pytest.fixture(scope="session")
def checkout_context():
    return parse_context(fixture_text("checkout.context.json"))


@pytest.fixture(scope="session")
def course_doc():
    return parse_document(fixture_text("course.json"))


@pytest.fixture(scope="session")
def course_context():
    return parse_context(fixture_text("course.context.json"))


@pytest.fixture(scope="session")
def conflict_context():
    return parse_context(fixture_text("conflict.context.json"))


@pytest.fixture()
def provider():
    return DeterministicProvider()


@pytest.fixture()
def empty_context():
    return DesignContext()
