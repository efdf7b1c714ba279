import pytest

import tdpe


def test_normalize_both_strategies():
    src = r"\x:bot. <(\y:bot. y) (S k. x)>"
    assert tdpe.normalize(src, "bot->bot", "cbv") == r"\x0:bot. <x0>"
    assert tdpe.normalize(src, "bot->bot", "cbn") == r"\x0:bot. <<x0>>"


def test_normalize_open_term_cbn():
    assert tdpe.normalize("<x0>", "bot", "cbn", ctx="bot") == "<<x0>>"


def test_check_reports():
    ok = tdpe.check(r"\x:bot. x", "bot->bot")
    assert ok["ok"] is True
    assert ok["type"] == "bot->bot"

    bad = tdpe.check(r"S k. k x0", "a", ctx="a", annot=0)
    assert bad["ok"] is False
    assert "shift" in bad["error"]

    assert tdpe.check(r"S k. k x0", "a", ctx="a", annot=1)["ok"] is True


def test_disjunct():
    tag, term = tdpe.disjunct(r"(inl (\x:a. x) : (a->a)+b)", "(a->a)+b")
    assert tag == "inl"
    assert term == r"\x0:a. x0"


def test_rewrite_reaches_named_intermediate():
    out = tdpe.rewrite(
        r"\x:bot. \y:bot->bot. <(S k. k y) x>",
        theory="cbn",
        max_steps=4,
        type="bot->(bot->bot)->bot",
    )
    assert r"\x0:bot. \x1:bot->bot. <x1 x0>" in out["terms"]
    assert out["normal_form_reached"] in (True, False)


def test_gen_is_deterministic():
    a = tdpe.gen_term(seed=42, depth=4, type="a->a")
    b = tdpe.gen_term(seed=42, depth=4, type="a->a")
    assert a == b
    assert tdpe.check(a, "a->a")["ok"] is True


def test_corpus_paper_all_green():
    rows = tdpe.corpus_paper()
    assert len(rows) == 8
    for row in rows:
        assert row["cbv_ok"], row
        assert row["cbn_ok"], row


def test_classify():
    assert tdpe.classify("x0") == "neutral"
    assert tdpe.classify(r"\x:a. x") == "normal"
    assert tdpe.classify(r"(\x:a. x) x0") == "not-in-grammar"


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
