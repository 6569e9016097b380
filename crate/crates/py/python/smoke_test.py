"""Smoke test for the biclique extension module.

Build and install with `pip install --no-build-isolation ./crates/py`
(or `maturin develop -m crates/py/Cargo.toml`), then run this script.
"""

import biclique


def main():
    fig2 = biclique.fig_graph("fig2")
    assert (fig2.n, fig2.m) == (5, 6)
    assert fig2.complement().is_chordal()

    out = biclique.cover(fig2)
    assert out["size"] == 2, out
    assert biclique.verify_cover(fig2, out["bicliques"])
    assert not biclique.verify_cover(fig2, out["bicliques"][:1])

    fig3 = biclique.fig_graph("fig3")
    part = biclique.partition(fig3)
    assert len(part) == 3 and biclique.verify_partition(fig3, part)
    assert biclique.exact_bc(fig3)["value"] == 3
    assert biclique.cover(fig3)["all_leq2_flag"] is False

    for n in range(3, 11):
        g = biclique.copath(n)
        assert biclique.cover(g)["size"] == (n - 2).bit_length(), n

    assert biclique.cover(biclique.cowindmill(6, 3))["size"] == 3
    assert biclique.lb_log_mc(biclique.fig_graph("fig1_k5")) == 3
    assert max(biclique.edge_ranking(9, [(i, i + 1) for i in range(8)])) == 4

    nodes, edges = biclique.clique_tree(fig3.complement())
    assert len(nodes) == 4 and len(edges) == 3

    report = biclique.bounds_report(fig3)
    assert report["oracle"]["bc"] == 3 and report["bounds"]["log_mc"] == 2
    assert report["violations"] == []

    g = biclique.Graph.from_text(fig2.to_text())
    assert g == fig2 and g.edges() == fig2.edges()
    try:
        biclique.Graph(3, [(0, 3)])
    except ValueError:
        pass
    else:
        raise AssertionError("out-of-range edge accepted")
    try:
        biclique.cover(biclique.fig_graph("fig1_c4c"))
    except ValueError as e:
        assert "chordal" in str(e)
    else:
        raise AssertionError("non-co-chordal input accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
