"""SVG emission: validity, content, ordering, determinism."""

import warnings
from xml.dom import minidom

import pytest

from bethe_rc.classify import label_solution
from bethe_rc.figures import catalogue_order, solution_svg, write_figures


@pytest.fixture(scope="module")
def labeled83(solved):
    return [label_solution(s) for s in solved(8, 3).solutions]


def test_svg_is_well_formed_xml(labeled83):
    doc = minidom.parseString(solution_svg(labeled83[0]))
    svg = doc.documentElement
    assert svg.tagName == "svg"
    assert svg.getAttribute("version") == "1.1"
    assert svg.getAttribute("xmlns") == "http://www.w3.org/2000/svg"


def test_one_dot_per_root_with_labels(labeled83):
    for lab in labeled83:
        doc = minidom.parseString(solution_svg(lab))
        circles = doc.getElementsByTagName("circle")
        texts = doc.getElementsByTagName("text")
        assert len(circles) == len(lab.solution.roots)
        # every regular root carries a half-integer label, plus the title
        want_labels = sum(1 for v in lab.root_numbers if v is not None)
        if lab.pair_number is not None:
            want_labels += 1
        assert len(texts) == want_labels + 1


def test_labels_match_quantum_numbers(labeled83):
    lab = labeled83[0]
    doc = minidom.parseString(solution_svg(lab))
    texts = {t.firstChild.nodeValue for t in doc.getElementsByTagName("text")}
    for v in lab.root_numbers:
        if v is not None:
            assert str(v) in texts


def test_catalogue_order_descends_by_largest_string(labeled83):
    ordered = catalogue_order(labeled83)

    def center(lab):
        best = max(lab.partition.strings, key=lambda S: (S.length, S.center))
        return best.center

    centers = [center(lab) for lab in ordered]
    assert centers == sorted(centers, reverse=True)


def test_write_figures(tmp_path, labeled83):
    paths = write_figures(labeled83, str(tmp_path / "figs"))
    assert len(paths) == len(labeled83)
    assert [p for p in paths] == sorted(paths)
    head = open(paths[0]).read()
    assert head.startswith("<svg")


def test_write_figures_filter(tmp_path, labeled83):
    paths = write_figures(labeled83, str(tmp_path / "figs"),
                          configuration=(2, 1))
    want = sum(1 for lab in labeled83 if lab.configuration == (2, 1))
    assert len(paths) == want > 0


def test_empty_filter_warns_and_writes_nothing(tmp_path, labeled83):
    target = tmp_path / "never"
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        paths = write_figures(labeled83, str(target), configuration=(9,))
    assert paths == []
    assert not target.exists()
    assert any("empty" in str(w.message) for w in caught)


def test_deterministic_bytes(labeled83):
    a = solution_svg(labeled83[3])
    b = solution_svg(labeled83[3])
    assert a == b
