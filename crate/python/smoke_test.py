"""Smoke test for the gogaut_py extension module.

Builds nothing itself: run `cargo build -p gogaut-py` first. The test
locates the compiled cdylib in target/ and loads it as `gogaut_py`.
"""

import importlib.util
import pathlib
import sys


def load_module():
    try:
        import gogaut_py  # already importable (installed or on PYTHONPATH)

        return gogaut_py
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    names = ["libgogaut_py.so", "gogaut_py.so", "libgogaut_py.dylib", "gogaut_py.pyd"]
    for profile in ("release", "debug"):
        for name in names:
            candidate = root / "target" / profile / name
            if candidate.exists():
                spec = importlib.util.spec_from_file_location("gogaut_py", candidate)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                return module
    sys.exit("gogaut_py not built; run `cargo build -p gogaut-py` first")


gg = load_module()

# words
al = gg.Alphabet(["a", "b"])
w = al.word("a*b*b^-1*a")
assert str(w) == "a^2"
assert str(w.inverse()) == "a^-2"
root, exp = w.is_proper_power()
assert (str(root), exp) == ("a", 2)
u = al.word("a*b")
v = al.word("b*a")
witness = u.are_conjugate(v)
assert witness is not None
assert u.conjugate(witness) == v

# subgroup membership with an expression witness
member, expr = gg.subgroup_membership([al.word("a*b"), al.word("b")], al.word("a^2"))
assert member and expr is not None
member, _ = gg.subgroup_membership([al.word("a*b"), al.word("a*b^-1")], al.word("a"))
assert not member

# free-group automorphisms
f = gg.FreeAut.parse("a -> b^-1\nb -> b*a*b\ninverse:\na -> a*b*a\nb -> a^-1\n")
assert f.apply(al.word("a*b")) == al.word("a*b")  # fixes a*b
assert f.is_inner() is None
assert gg.FreeAut.ad(al.word("a*b")).is_inner() is not None
assert f.compose(f.inverse()).is_identity()

# the built-in worked example
s4 = gg.Section4()
gog = s4.gog
assert gog.vertices == ["u", "v", "w"]
assert str(gog.edge_image("~e_u")) == "a*b"

phi = s4.phi
phi2 = phi.compose(phi)
basis = phi.alphabet
g = basis.word("a*b")
assert phi2.apply(basis.word("a")) == basis.word("a").conjugate(g)

# R induces phi; R^2 has trivial graph map and dies under mu
r = s4.r
assert r.diagnostics() == []
assert r.induced_aut("v") == phi
r2 = r.power(2)
assert r2.graph_map_is_trivial
classes, preserves = r2.mu()
assert preserves and all(trivial for _, trivial in classes)

# Dehn twists: commutation with phi exactly on the diagonal
d11 = s4.twist(1, 1).induced_aut("v")
d10 = s4.twist(1, 0).induced_aut("v")
assert d11.outer_commutes(phi)
assert not d10.outer_commutes(phi)
assert d11.outer_equal(phi2)

# path words and translation length
p = gog.path("v", "~e_u * `a` * e_u * ~e_w * `alpha` * e_w")
assert p.translation_length() == 4
assert r.apply(p).translation_length() == 4
q = gog.path("v", "~e_u * `a*b` * e_u")
assert q.pi1_equal(gog.path("v", "`g`"))

# McCool membership of the g-fixing automorphism
member, witnesses = gg.mccool_membership(f, [al.word("a*b")])
assert member and witnesses == ["1"]

# scenario files round-trip through the same grammar as the CLI
sc = gg.Scenario.parse(
    "vertex u : a, b\n"
    "vertex v : g, gamma\n"
    "edge e : u -> v ; z -> a*b | g\n"
    "base v\n"
    "gogaut T\n"
    "twist e = 2\n"
    "end\n"
)
assert sc.base == "v"
assert sc.gogaut("T").diagnostics() == []

# the check runner
results = gg.run_section4(checks=["phi-squared-table", "r-realises-phi"])
assert [r["status"] for r in results] == ["pass", "pass"]

print("smoke test passed:", len(results), "checks and all assertions OK")
