"""
Unit Tests for Lawvere-Tierney Topologies and Sheaves

Most tests use the double negation topology on CHAIN3, where h is dense.

Functions:
    test_validateTopology: ¬¬ and the identity are topologies; a constant is not.
    test_checkSeparated: A point glued to another at degree h is not ¬¬-separated.
    test_checkSheaf: Internal check and oracle on sheaves and non-sheaves.
    test_campaigns: The enumerated density, order and oracle comparisons agree.
    test_oracleCampaign_carrierThree: Oracle agreement on every object of up to three points.
"""

import pytest

from controller.checkconstants import LAW_DSC, LAW_INC, LAW_J_DISTRIBUTION, LAW_LEQ, LAW_ORACLE, LAW_SEP
from controller.errors import UnknownElementError
from controller.topology import (
    checkJDistribution,
    checkSeparated,
    checkSheaf,
    closure,
    denseSubobjects,
    domainTests,
    densityCampaign,
    doubleNegation,
    identityTopology,
    isDense,
    leqCampaign,
    leqCheck,
    oracleCampaign,
    oracleCompare,
    sheafOracle,
    tableTopology,
    validateTopology,
)
from controller.topos import canonicalSubobject, terminal
from objects.result import Verdict
from tests.conftest import createFrame, createObject


@pytest.fixture(name="dnn")
def dnn_fixture(chain3):
    return doubleNegation(chain3)


def gluedPair(frame, degree):
    return createObject(frame, ["x", "y"], {("x", "x"): "1", ("y", "y"): "1", ("x", "y"): degree})


def test_validateTopology(dnn, chain3):
    """
    GIVEN ¬¬ and the identity on CHAIN3
    WHEN the topology rows are checked
    THEN inc, idm, prs and extensionality hold
    """
    result = validateTopology(dnn)
    assert result.verdict == Verdict.VERIFIED
    assert set(result.witness) == {"topology", "inc", "idm", "prs", "fext"}
    assert validateTopology(identityTopology(chain3)).verdict == Verdict.VERIFIED


def test_validateTopology_constant(chain3):
    """
    GIVEN the constant map to 0
    WHEN it is checked as a topology
    THEN inc fails at h
    """
    constant = tableTopology(chain3, {"0": "0", "h": "0", "1": "0"}, name="zero")
    result = validateTopology(constant)
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.law == LAW_INC
    assert result.witness["phi"] == "h"


def test_validateTopology_rows(dnn):
    result = validateTopology(dnn, rows=("inc",))
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_INC
    assert "prs" not in result.witness


def test_tableTopology_incomplete(chain3):
    with pytest.raises(UnknownElementError):
        tableTopology(chain3, {"0": "0", "1": "1"})


def test_checkJDistribution(dnn):
    result = checkJDistribution(dnn)
    assert result.verdict == Verdict.VERIFIED
    assert result.law == LAW_J_DISTRIBUTION


def test_denseSubobjects(dnn, chain3):
    point = createObject(chain3, ["x"], {("x", "x"): "1"})
    assert [test.predicate["x"] for test in denseSubobjects(dnn, point)] == ["h", "1"]


def test_closure(dnn, chain3):
    point = createObject(chain3, ["x"], {("x", "x"): "1"})
    _, inclusion = canonicalSubobject(point, {"x": "h"})
    assert isDense(dnn, inclusion).verdict == Verdict.VERIFIED
    closed, _ = closure(dnn, inclusion)
    assert closed.ex("x") == "1"
    _, empty = canonicalSubobject(point, {"x": "0"})
    assert isDense(dnn, empty).verdict == Verdict.COUNTEREXAMPLE


def test_checkSeparated(dnn, chain3):
    """
    GIVEN two existing points equal to degree h
    WHEN ¬¬-separation is checked
    THEN it fails at a = x, b = y since ¬¬h = 1
    """
    result = checkSeparated(dnn, gluedPair(chain3, "h"))
    assert result.verdict == Verdict.COUNTEREXAMPLE
    assert result.law == LAW_SEP
    assert (result.witness["a"], result.witness["b"]) == ("x", "y")
    assert result.witness["j(a~b)"] == "1"
    assert checkSeparated(dnn, gluedPair(chain3, "0")).verdict == Verdict.VERIFIED


def test_checkSheaf(dnn, chain3):
    """
    GIVEN two distinct existing points, and the terminal object
    WHEN the sheaf condition is checked internally and by the oracle
    THEN both objects are sheaves
    """
    for obj in (gluedPair(chain3, "0"), terminal(chain3)):
        assert checkSheaf(dnn, obj, carrierLimit=1).verdict == Verdict.VERIFIED
        assert sheafOracle(dnn, obj, carrierLimit=1).verdict == Verdict.VERIFIED


def test_checkSheaf_notSeparated(dnn, chain3):
    obj = gluedPair(chain3, "h")
    assert checkSheaf(dnn, obj, carrierLimit=1).law == LAW_SEP
    oracle = sheafOracle(dnn, obj, carrierLimit=1)
    assert oracle.verdict == Verdict.COUNTEREXAMPLE
    assert oracle.witness["reason"] == "not injective"


def test_checkSheaf_partialPoint(dnn, chain3):
    """
    GIVEN a single point existing to degree h
    WHEN the sheaf condition is checked
    THEN descent fails and the oracle finds a map that does not extend
    """
    obj = createObject(chain3, ["x"], {("x", "x"): "h"})
    internal = checkSheaf(dnn, obj, carrierLimit=1)
    assert internal.verdict == Verdict.COUNTEREXAMPLE
    assert internal.law == LAW_DSC
    oracle = sheafOracle(dnn, obj, carrierLimit=1)
    assert oracle.verdict == Verdict.COUNTEREXAMPLE
    assert oracle.witness["reason"] == "not surjective"


def test_oracleCompare(dnn, chain3):
    result = oracleCompare(dnn, gluedPair(chain3, "h"), carrierLimit=1)
    assert result.verdict == Verdict.VERIFIED
    assert result.witness["internal"] == "COUNTEREXAMPLE"
    assert result.witness["oracle"] == "COUNTEREXAMPLE"


def test_leqCheck(chain3):
    obj = gluedPair(chain3, "0")
    identityMap = {"x": "x", "y": "y"}
    swap = {"x": "y", "y": "x"}
    failed = leqCheck(obj, {"x": "1", "y": "0"}, identityMap, swap, obj)
    assert failed.verdict == Verdict.COUNTEREXAMPLE
    assert failed.law == LAW_LEQ
    assert leqCheck(obj, {"x": "0", "y": "0"}, identityMap, swap, obj).verdict == Verdict.VERIFIED


def test_campaigns(dnn, chain3):
    """
    GIVEN the objects with at most one or two points
    WHEN the internal notions are compared with their external counterparts
    THEN no disagreement is found
    """
    assert densityCampaign(dnn, 2).verdict == Verdict.VERIFIED
    assert leqCampaign(chain3, 1).verdict == Verdict.VERIFIED
    oracle = oracleCampaign(dnn, 1, carrierLimit=1)
    assert oracle.verdict == Verdict.VERIFIED
    assert oracle.law == LAW_ORACLE
    assert oracle.witness["objects"] == 3


@pytest.mark.parametrize("name", ["BOOL2", "CHAIN3"])
@pytest.mark.parametrize("topology", ["id", "dnn"])
def test_oracleCampaign_carrierThree(name, topology):
    """
    GIVEN every validated object with at most three points over a builtin frame
    WHEN the internal sheaf check is compared with the oracle on domains of up to three points
    THEN the two agree on every object
    """
    frame = createFrame(name)
    j = identityTopology(frame) if topology == "id" else doubleNegation(frame)
    result = oracleCampaign(j, 3, carrierLimit=3)
    assert result.verdict == Verdict.VERIFIED
    assert result.witness["carrierLimit"] == 3
    if name == "BOOL2":
        assert result.witness["objects"] == 2 + 5 + 15
        assert result.witness["domains"] == 2 + 4 + 7


def test_domainTests_relabelling(chain3):
    """
    GIVEN the two-point objects over CHAIN3
    WHEN test domains are collected
    THEN objects that differ only by swapping the two points appear once
    """
    dnn = doubleNegation(chain3)
    domains = [domain for domain, _ in domainTests(dnn, 2) if len(domain.carrier) == 2]
    tables = {tuple(domain.rel(x, y) for x in ("x", "y") for y in ("x", "y")) for domain in domains}
    for xx, xy, yx, yy in tables:
        if xx != yy:
            assert (yy, yx, xy, xx) not in tables
