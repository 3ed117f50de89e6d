from fractions import Fraction

import pytest

import logbal


def test_terms():
    offset, values = logbal.terms("a[n] = 2*a[n-1]; a[0]=1", 4)
    assert offset == 0
    assert values == [1, 2, 4, 8]
    _, apery = logbal.terms("apery", 6, catalog=True)
    assert apery == [1, 5, 73, 1445, 33001, 819005]


def test_rationals_are_fractions():
    _, values = logbal.terms("a[n] = a[n-1]/3; a[0]=1", 3)
    assert values[2] == Fraction(1, 9)


def test_certify_motzkin():
    rep = logbal.certify("motzkin", catalog=True)
    assert rep["verdict"] == "log_balanced"
    bal = [c for c in rep["certificates"] if c["property"] == "log_balanced"][0]
    assert Fraction(bal["bounds"]["lower"]["intercept"]) <= 2
    ok, problems = logbal.replay(rep)
    assert ok, problems


def test_certify_negative():
    rep = logbal.certify("factorial_shift_down", catalog=True)
    assert rep["verdict"] != "log_balanced"
    assert any(f["reason"] == "counterexample" for f in rep["failures"])


def test_classify():
    assert logbal.classify("a[n] = n*a[n-1]; a[0]=1", window=10)["verdict"] == "log_convex"


def test_catalog():
    names = logbal.catalog_names()
    assert "baxter" in names
    assert logbal.oracle("motzkin", 10) == 2188
    with pytest.raises(logbal.LookupError):
        logbal.catalog_recurrence("nope")


def test_parse_error():
    with pytest.raises(logbal.ParseError):
        logbal.normalize("a[n] = 2*a[n-1")
    assert issubclass(logbal.ParseError, logbal.LogbalError)


def test_cli():
    code, out, _ = logbal.run_cli(["compute", "--inline", "a[n] = 2*a[n-1]; a[0]=1", "--terms", "4"])
    assert code == 0
    assert out.split() == ["1", "2", "4", "8"]
    code, _, _ = logbal.run_cli(["certify", "--catalog", "factorial_squared"])
    assert code == 1
