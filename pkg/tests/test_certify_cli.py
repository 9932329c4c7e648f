import hashlib
import json
import subprocess
import sys

import pytest

import dehnlink.pipeline as certify_mod
from dehnlink.pipeline import NONTRIVIAL, NOT_APPLICABLE, TRIVIAL, certify
from dehnlink.cli import main
from dehnlink.errors import InternalInconsistency
from dehnlink.presentation import Presentation, parse_presentation
from dehnlink.solver import is_geodesic, parse_word

from oracles import CORPUS, corpus_diagram, corpus_manifest


def path(name):
    return str(CORPUS / f"{name}.pd")


@pytest.mark.parametrize("name", ["unknot0", "unknot1"])
def test_unknots_trivial(name):
    cert = certify(corpus_diagram(name))
    assert cert.verdict == TRIVIAL and cert.evidence is None
    assert all(fr.crossings == 0 for fr in cert.factors)


def test_trefoil_nontrivial():
    cert = certify(corpus_diagram("trefoil"))
    assert cert.verdict == NONTRIVIAL
    assert cert.evidence["geodesic_word"]
    fr = cert.factors[0]
    assert fr.checks == {"connected": True, "reduced": True, "prime": True, "alternating": True}
    assert fr.small_cancellation == {"pieces_max_len": 1, "C4": True, "T4": True}


def test_flipped_trefoil_not_applicable():
    cert = certify(corpus_diagram("trefoil_flipped"))
    assert cert.verdict == NOT_APPLICABLE and cert.evidence is None
    assert cert.factors[0].longitudes == []


def test_factors():
    granny = certify(corpus_diagram("granny"))
    assert [fr.verdict for fr in granny.factors] == [NONTRIVIAL, NONTRIVIAL]
    split = certify(corpus_diagram("trefoil_circle"))
    assert [fr.verdict for fr in split.factors] == [NONTRIVIAL, TRIVIAL]
    assert split.verdict == NONTRIVIAL
    kinked = certify(corpus_diagram("trefoil_kinked"))
    assert (kinked.input_crossings, kinked.reduced_crossings, kinked.verdict) == (4, 3, NONTRIVIAL)


def test_cross_consistency():
    for entry in corpus_manifest():
        d = corpus_diagram(entry["name"])
        cert = certify(d)
        if cert.verdict == TRIVIAL:
            assert all(fr.crossings == 0 for fr in cert.factors)
        for fr in cert.factors:
            if fr.verdict != NONTRIVIAL:
                continue
            assert fr.small_cancellation["C4"] and fr.small_cancellation["T4"]
            p = certify_mod.build_presentation(*_faces(fr))
            for c in fr.longitudes:
                if c.nontrivial:
                    assert is_geodesic(parse_word(c.geodesic_word), p)


def _faces(fr):
    from dehnlink.diagram import checkerboard, parse_pd, trace_faces
    d = parse_pd(fr.pd)
    f = trace_faces(d)
    return d, f, checkerboard(f)


def test_determinism_and_digest():
    raw = (CORPUS / "eight.pd").read_bytes()
    d = corpus_diagram("eight")
    a = certify(d, normal_forms=True, source=raw).to_dict()
    b = certify(d, normal_forms=True, source=raw).to_dict()
    assert a == b
    assert a["input_digest"] == hashlib.sha256(raw).hexdigest()


def test_unverified_presentation_is_internal_inconsistency(monkeypatch, capsys):
    bad = Presentation.from_relators([(1, 1, 1, 1), (1, 2, 1, -2)])
    monkeypatch.setattr(certify_mod, "build_presentation", lambda d, f, col: bad)
    with pytest.raises(InternalInconsistency):
        certify(corpus_diagram("trefoil"))
    assert main(["certify", path("trefoil")]) == 4


# command line -------------------------------------------------------------

def test_cli_check(capsys):
    assert main(["check", path("eight")]) == 0
    assert capsys.readouterr().out.strip() == "connected=1 reduced=1 prime=1 alternating=1"
    main(["check", path("granny")])
    assert capsys.readouterr().out.strip() == "connected=1 reduced=1 prime=0 alternating=1"


def test_cli_present(capsys):
    assert main(["present", path("trefoil")]) == 0
    p = parse_presentation(capsys.readouterr().out)
    assert len(p.generators) == 5 and len(p.base_relators) == 3


def test_cli_reduce_word(capsys):
    assert main(["reduce-word", path("trefoil"), "3 -1 5 -2"]) == 0
    assert capsys.readouterr().out.strip() == "3 -1 5 -2"
    assert main(["reduce-word", path("trefoil"), "2 -4 3 -1"]) == 0
    assert capsys.readouterr().out.strip() == ""
    assert main(["reduce-word", path("trefoil"), "9"]) == 2
    assert main(["reduce-word", path("trefoil"), "x"]) == 2


def test_cli_certify_json(capsys):
    assert main(["certify", path("trefoil"), "--json", "--normal-form"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == {"input_digest", "input_crossings", "reduced_crossings", "verdict", "factors", "evidence"}
    assert doc["verdict"] == NONTRIVIAL
    comp = doc["factors"][0]["longitudes"][0]
    assert comp["normal_form_parity_changes"] <= 1
    assert set(comp) == {
        "component", "slk", "double_length", "double_word", "meridian_word", "longitude_word",
        "geodesic_word", "geodesic_length", "nontrivial", "normal_form", "normal_form_parity_changes",
    }


def test_cli_exit_codes(tmp_path, capsys):
    assert main(["certify", path("trefoil_flipped")]) == 3
    assert main(["certify", path("unknot1")]) == 0
    assert main(["certify", str(tmp_path / "missing.pd")]) == 2
    bad = tmp_path / "bad.pd"
    bad.write_text("PD[X(1,4,2,5),X(3,6,4,1)]")
    assert main(["certify", str(bad)]) == 2
    bad.write_text("not a pd code")
    assert main(["check", str(bad)]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "dehnlink", "check", path("trefoil")],
                         capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "connected=1 reduced=1 prime=1 alternating=1"
