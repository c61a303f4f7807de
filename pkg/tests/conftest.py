import os

import pytest

from selmerbounds.classgroups import ClassDataProvider, load_class_data

DATA = os.path.join(os.path.dirname(__file__), os.pardir, "src", "selmerbounds", "data")
CURVES = os.path.abspath(os.path.join(DATA, "curves"))
CLASSDATA = os.path.abspath(os.path.join(DATA, "classdata"))

ACCEPTANCE_LINES = []


def curve_path(name):
    return os.path.join(CURVES, f"{name}.json")


def classdata_path(name):
    return os.path.join(CLASSDATA, f"{name}.json")


def imported_provider(*names):
    docs = []
    for n in names:
        docs.extend(load_class_data(classdata_path(n)))
    return ClassDataProvider(docs)


@pytest.fixture(scope="session")
def builtin_provider():
    return ClassDataProvider()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
