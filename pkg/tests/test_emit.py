import csv
import io

from hypothesis import given

from corpus import chain_sets
from keyfactors.analysis import AnalysisConfig, analyze, competition_rank
from keyfactors.emit import (
    PlotLayout,
    export_dot,
    export_matrix_csv,
    export_report_csv,
    render_scatter_svg,
)
from keyfactors.matrix import SumsTable, build_matrix, sums
from keyfactors.model import ChainSet, Factor, FactorCategory, FailureChain

C = FactorCategory

ABH = FailureChain("a", "c", ((C.COMPONENT, "A"), (C.EFFECT, "B"), (C.HARM, "H")))


def matrix_csv_for(chain_set):
    m = build_matrix(chain_set)
    table = sums(m)
    return m, table, export_matrix_csv(
        m, table, competition_rank(table.active), competition_rank(table.passive)
    )


def read_matrix_csv(text):
    """Test-only reader: recover counts and sums from the matrix export."""
    rows = list(csv.reader(io.StringIO(text)))
    header = rows[0]
    labels = header[1 : header.index("active_sum")]
    n = len(labels)
    counts = [[int(cell or 0) for cell in row[1 : 1 + n]] for row in rows[1 : 1 + n]]
    active = [int(row[1 + n]) for row in rows[1 : 1 + n]]
    passive = [int(cell) for cell in rows[1 + n][1 : 1 + n]] if len(rows) > 1 + n else []
    return labels, counts, active, passive


def test_matrix_csv_single_chain_layout():
    _, _, text = matrix_csv_for(ChainSet((ABH,)))
    labels, counts, active, passive = read_matrix_csv(text)
    assert labels == ["component:A", "effect:B", "harm:H"]
    assert counts == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    assert active == [1, 1, 0]
    assert passive == [0, 1, 1]
    assert sum(row.count(0) for row in counts) == 7  # zeros print as empty cells
    assert ",,1," in text


def test_matrix_csv_empty_matrix_is_header_only():
    _, _, text = matrix_csv_for(ChainSet())
    assert text == ",active_sum,active_rank\n"


def test_matrix_csv_quotes_awkward_names():
    chain = FailureChain(
        "a", "c", ((C.COMPONENT, 'force, F "N"'), (C.HARM, "burn")),
    )
    _, _, text = matrix_csv_for(ChainSet((chain,)))
    labels, counts, _, _ = read_matrix_csv(text)
    assert labels[0] == 'component:force, F "N"'
    assert counts[0][1] == 1


@given(chain_sets())
def test_matrix_csv_round_trips_counts_and_sums(chain_set):
    m, table, text = matrix_csv_for(chain_set)
    labels, counts, active, passive = read_matrix_csv(text)
    assert labels == [f.label for f in m.factors]
    assert counts == [list(row) for row in m.counts]
    assert active == list(table.active)
    if m.factors:
        assert passive == list(table.passive)


def test_report_csv_contains_case_study_row():
    factors = (
        Factor(C.COMPONENT, "hair dryer", "hair dryer", 1),
        Factor(C.CONTROL_FACTOR, "increasing temperature Q [J]", "increasing temperature q [j]", 2),
        Factor(C.ACTION, "user touches accessible live parts", "user touches accessible live parts", 3),
        Factor(C.HARM, "electrical shock", "electrical shock", 4),
    )
    table = SumsTable(factors, (14, 22, 23, 0), (9, 20, 23, 24))
    scores = analyze(table)
    text = export_report_csv(scores)
    rows = list(csv.DictReader(io.StringIO(text)))
    row = rows[0]
    assert (row["active_sum"], row["active_norm"]) == ("14", "60.9")
    assert (row["passive_sum"], row["passive_norm"]) == ("9", "37.5")
    assert row["region"] == "dynamic"


def test_report_csv_empty_and_row_count():
    assert export_report_csv(()) == (
        "id,category,name,active_sum,active_norm,active_rank,"
        "passive_sum,passive_norm,passive_rank,region,key\n"
    )
    scores = analyze(ChainSet((ABH,)))
    rows = list(csv.DictReader(io.StringIO(export_report_csv(scores))))
    assert len(rows) == len(scores)
    assert [row["id"] for row in rows] == ["1", "2", "3"]


def test_scatter_svg_marker_positions_and_counts():
    factors = (
        Factor(C.ACTION, "user touches accessible live parts", "user touches accessible live parts", 1),
        Factor(C.HARM, "electrical shock", "electrical shock", 2),
    )
    table = SumsTable(factors, (23, 0), (23, 24))
    scores = analyze(table)
    layout = PlotLayout()
    svg = render_scatter_svg(scores, AnalysisConfig(), layout)
    assert svg.count('class="marker"') == 2
    assert svg.count('class="boundary"') == 2
    x = layout.x_pixel(100 * 23 / 24)  # factor 1 passive norm, printed as 95.8
    y = layout.y_pixel(100.0)
    assert f'cx="{x:.2f}" cy="{y:.2f}"' in svg


def test_scatter_svg_boundary_rays_follow_config():
    layout = PlotLayout()
    svg = render_scatter_svg((), AnalysisConfig(dominant_ratio=2.0, reactive_ratio=0.5), layout)
    # dominant ray leaves the square at passive 50, reactive at active 50
    assert f'x2="{layout.x_pixel(50):.2f}" y2="{layout.y_pixel(100):.2f}"' in svg
    assert f'x2="{layout.x_pixel(100):.2f}" y2="{layout.y_pixel(50):.2f}"' in svg


def test_scatter_svg_empty_scores_is_axes_only():
    svg = render_scatter_svg(())
    assert 'class="marker"' not in svg
    assert svg.count('class="boundary"') == 2


def test_scatter_svg_is_deterministic():
    scores = analyze(ChainSet((ABH,)))
    assert render_scatter_svg(scores) == render_scatter_svg(scores)


def test_plot_layout_validation():
    import pytest

    with pytest.raises(ValueError):
        PlotLayout(width=0)
    with pytest.raises(ValueError):
        PlotLayout(margin=400)


def test_dot_single_chain():
    text = export_dot(build_matrix(ChainSet((ABH,))))
    assert text.count("[label=") == 5  # 3 nodes + 2 edges
    assert 'f1 [label="1: A", shape=box];' in text
    assert 'f1 -> f2 [label="1", penwidth=1.0];' in text
    assert 'f2 -> f3 [label="1", penwidth=1.0];' in text


def test_dot_edge_label_carries_the_count():
    link = ((C.COMPONENT, "grille"), (C.FUNCTION, "preventing access"))
    chains = ChainSet(
        tuple(
            FailureChain("a", "c", (*link, (C.ACTION, f"act {i}"), (C.HARM, "shock")))
            for i in range(3)
        )
    )
    text = export_dot(build_matrix(chains))
    assert 'f1 -> f2 [label="3", penwidth=3.0];' in text


def test_dot_empty_matrix_has_empty_body():
    assert export_dot(build_matrix(ChainSet())) == "digraph failure_network {\n}\n"


def test_dot_escapes_quotes_in_names():
    chain = FailureChain("a", "c", ((C.COMPONENT, 'the "thing"'), (C.HARM, "burn")))
    text = export_dot(build_matrix(ChainSet((chain,))))
    assert 'label="1: the \\"thing\\""' in text


@given(chain_sets())
def test_all_emitters_are_deterministic(chain_set):
    m = build_matrix(chain_set)
    table = sums(m)
    ranks = competition_rank(table.active), competition_rank(table.passive)
    scores = analyze(chain_set)
    assert export_matrix_csv(m, table, *ranks) == export_matrix_csv(m, table, *ranks)
    assert export_report_csv(scores) == export_report_csv(scores)
    assert export_dot(m) == export_dot(m)
    assert render_scatter_svg(scores) == render_scatter_svg(scores)
