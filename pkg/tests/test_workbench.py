import json
import random
from itertools import permutations, product

import pytest

from pointfree.cli import main
from pointfree.corpus import POSET_CLASSES, CorpusSpec, generate_corpus, posets_of_size
from pointfree.dot import emit_dot
from pointfree.frame import boolean, chain, is_isomorphic, save_frame
from pointfree.order import completely_below
from pointfree.suites import UnknownSuite, mutate_frame, run_suite, suite_names


def _poset_classes_by_brute_force(n):
    """Reflexive transitive antisymmetric relations on n points, up to relabelling."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    for bits in product([0, 1], repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2 and i != k):
            continue
        seen.add(min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in permutations(range(n))))
    return len(seen)


@pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
def test_poset_counts_match_brute_force(n):
    assert len(posets_of_size(n)) == POSET_CLASSES[n] == _poset_classes_by_brute_force(n)


def test_poset_count_size_five():
    assert len(posets_of_size(5)) == 63


def test_corpus_examples():
    sizes = sorted(e.size for e in generate_corpus(1))
    assert sizes == [1, 2]
    frames = [e.frame for e in generate_corpus(2)]
    assert any(is_isomorphic(f, boolean(2)) for f in frames)
    assert any(is_isomorphic(f, chain(3)) for f in frames)
    exact3 = [e for e in generate_corpus(3) if e.poset.size == 3]
    assert len(exact3) == 5
    assert len(list(generate_corpus(CorpusSpec(5)))) == 88


def test_corpus_frames_pairwise_non_isomorphic():
    frames = [e.frame for e in generate_corpus(4)]
    for i, f in enumerate(frames):
        for g in frames[i + 1:]:
            if f.size == g.size:
                assert not is_isomorphic(f, g)


def test_corpus_deterministic():
    a = [(e.name, e.frame.leq.tobytes()) for e in generate_corpus(4)]
    b = [(e.name, e.frame.leq.tobytes()) for e in generate_corpus(4)]
    assert a == b


def test_bad_bound():
    with pytest.raises(ValueError):
        list(generate_corpus(-1))


# ------------------------------------------------------------------ suites


def test_meet_identity_suite_on_bound_four():
    corpus = list(generate_corpus(4))
    # the identity needs complete regularity: gated it passes, ungated it fails on C3
    assert run_suite("lemma13", corpus, gate="cr").passed
    rep = run_suite("lemma13", corpus, gate="none")
    assert not rep.passed and rep.results[0].witness[0] == "P2.1"


def test_con_suite_vacuous_on_trivial_frame():
    corpus = list(generate_corpus(0))
    rep = run_suite("lemma10", corpus)
    assert rep.passed and rep.results[0].status in ("pass", "vacuous")


def test_join_mutation_fails_with_witness():
    corpus = [e for e in generate_corpus(3) if e.size >= 2]
    rep = run_suite("lemma1", corpus, gate="cr", mutation="join")
    assert not rep.passed
    bad = [r for r in rep.results if not r.passed]
    assert bad[0].witness is not None and bad[0].witness[0].startswith("P")


def test_mutate_frame_changes_tables():
    f = boolean(2)
    g = mutate_frame(f, random.Random(0), "join")
    assert (g.join != f.join).any()
    g = mutate_frame(f, random.Random(0), "covers")
    assert not g.covers[:, f.top].any()


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_suite("no-such-suite")


def test_report_formats():
    rep = run_suite("lemma1", list(generate_corpus(2)), seed=3)
    lines = rep.lines()
    assert lines[0].startswith("suite lemma1 (seed 3")
    assert all("Lemma 1" in ln for ln in lines[1:])
    data = rep.to_json()
    assert data["passed"] and json.dumps(data)


def test_every_tag_is_traceable():
    for name in suite_names():
        rep = run_suite(name, list(generate_corpus(1)), gate="cr") if name not in (
            "rline", "attach", "em", "filters", "filters-extra") else None
        if rep is None:
            continue
        for r in rep.results:
            assert r.tag.split()[0] in ("Lemma", "Prop", "Cor", "filter", "successor", "completely", "CR")


# ------------------------------------------------------------------ dot


def test_dot_chain():
    text = emit_dot(chain(3))
    assert text.count("->") == 2 and "n0 -> n1" in text and "n1 -> n2" in text


def test_dot_diamond():
    text = emit_dot(boolean(2))
    edges = sorted(ln.strip() for ln in text.splitlines() if "->" in ln)
    assert edges == ["n0 -> n1;", "n0 -> n2;", "n1 -> n3;", "n2 -> n3;"]


def test_dot_overlay_dashed():
    text = emit_dot(completely_below(chain(3)))
    dashed = [ln.strip() for ln in text.splitlines() if "dashed" in ln]
    assert [d.split(" [")[0] for d in dashed] == ["n0 -> n1", "n0 -> n2", "n1 -> n2"]


def test_dot_is_stable():
    assert emit_dot(("con", chain(3))) == emit_dot(("con", chain(3)))


# ------------------------------------------------------------------ cli


def run_cli(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_cli_analyze(capsys):
    code, out = run_cli(capsys, "--json", "analyze", "--frame", "C3")
    data = json.loads(out)
    assert code == 0 and data["center"] == ["∅", "{0,1}"] and data["completely_regular"] is False


def test_cli_frame_file(tmp_path, capsys):
    p = tmp_path / "b2.json"
    save_frame(boolean(2), p)
    code, out = run_cli(capsys, "--json", "analyze", "--frame", str(p))
    assert json.loads(out)["completely_regular"] is True


@pytest.mark.parametrize("argv", [
    ["reflect", "--frame", "B2"],
    ["assembly", "--frame", "C3", "--enumerate"],
    ["filters", "--frame", "B2", "--enumerate-round"],
    ["filters", "--frame", "point:1/2", "--challenge", "(0,1)"],
    ["nucleus", "--frame", "C3", "--kind", "pi"],
    ["nucleus", "--frame", "B2", "--kind", "filter:1"],
    ["rline", "fill", "(0,1)u(1,2)"],
    ["rline", "cb", "(0,1)", "(-1,2)"],
    ["attach", "--points", "0,1,5/2", "--op", "max"],
    ["dot", "--frame", "B2", "--relation", "cb"],
])
def test_cli_verbs_succeed(capsys, argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0 and out


def test_cli_rline_fill(capsys):
    _, out = run_cli(capsys, "rline", "fill", "(0,1)u(1,2)u(2,3)")
    assert out.strip() == "value: (0,3)"


def test_cli_verify_exit_codes(capsys, monkeypatch):
    code, out = run_cli(capsys, "verify", "--suite", "lemma1", "--max-poset-size", "2")
    assert code == 0 and "PASS" in out
    code, out = run_cli(capsys, "verify", "--suite", "lemma13", "--max-poset-size", "2", "--gate", "none")
    assert code == 1 and "FAIL" in out
    monkeypatch.setenv("WORKBENCH_SEED", "11")
    code, out = run_cli(capsys, "--json", "verify", "--suite", "lemma1", "--max-poset-size", "2")
    assert json.loads(out)[0]["seed"] == 11


def test_cli_errors(capsys):
    assert main(["verify", "--suite", "nope"]) == 2
    assert main(["analyze", "--frame", "nope"]) == 2
    assert main(["attach", "--points", "0", "--op", "meet", "--args", "{0}:(1,2)"]) == 2
