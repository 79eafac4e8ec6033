"""Expected residual programs for the corpus examples.

Each constant is the known-good output for one (example, query) pair, written
in the object language. Tests compare against them up to alpha equivalence
(bijective renaming of generated function names and bound variables, modulo
definition order), so the concrete names here carry no significance.
"""

from __future__ import annotations

# double append, minimum-size (equals last) graph: the fused single-pass
# append over three lists.
DOUBLE_APPEND_OPTIMAL = """
f_0(ys, zs) = f_0_case0(ys, zs);
f_0_case0(Nil(), zs) = zs;
f_0_case0(Cons(x0, xs0), zs) = Cons(x0, f_0(xs0, zs));
f_(xs, ys, zs) = f__case0(xs, ys, zs);
f__case0(Nil(), ys, zs) = f_0(ys, zs);
f__case0(Cons(x00, xs00), ys, zs) = Cons(x00, f_(xs00, ys, zs));
expression: f_(xs, ys, zs)
"""

# string matching, minimum-size graph: the staged matcher that re-tests the
# last read character after a failure instead of rescanning.
KMP_OPTIMAL = """
f_1_0_0_0_1_0_0(s0, ss1) = f_1_0_0_0_1_0_0_case0(s0, ss1);
f_1_0_0_0_1_0_0_case0(True(), ss1) = f_1_0_0_0_1_0_0_case1(ss1);
f_1_0_0_0_1_0_0_case0(False(), ss1) = f_0(ss1);
f_1_0_0_0_1_0_0_case1(Nil()) = False();
f_1_0_0_0_1_0_0_case1(Cons(s0, ss0)) = f_1_0_0_0_1_0_0_case2(s0, s0, ss0);
f_1_0_0_0_1_0_0_case2(True(), s0, ss0) = f_1_0_0_0_1_0_0(s0, ss0);
f_1_0_0_0_1_0_0_case2(False(), s0, ss0) = True();
f_0(s) = f_0_case0(s);
f_0_case0(Nil()) = False();
f_0_case0(Cons(s0, ss0)) = f_0_case1(s0, ss0);
f_0_case1(True(), ss0) = f_0_case2(ss0);
f_0_case1(False(), ss0) = f_0(ss0);
f_0_case2(Nil()) = False();
f_0_case2(Cons(s0, ss1)) = f_1_0_0_0_1_0_0(s0, ss1);
expression: f_0(s)
"""

# Boolean symmetry test, last (least generalized) graph: every branch is
# statically True.
EQBOOL_OPTIMAL = """
main_case0(True(), y) = main_case2(y);
main_case0(False(), y) = main_case2(y);
main_case2(True()) = True();
main_case2(False()) = True();
expression: main_case0(x, y)
"""

# exponential growth example, minimum-size graph: linear-size program with a
# single shared squaring helper; the loop is entered after one list element
# has already been consumed, hence the two-element list in the root.
EXP_GROWTH_MIN = """
f_3(xs0, y0) = f_3_let0(f_3_case0(xs0, y0));
f_3_let0(w0) = B(w0, w0);
f_3_case0(Nil(), y0) = y0;
f_3_case0(Cons(x0, xs1), y0) = f_3(xs1, y0);
expression: f_3(Cons(A(), Cons(A(), Nil())), z)
"""

# exponential growth example, minimum size when unfold nodes are free: the
# fully static input collapses to two nested squarings.
EXP_GROWTH_SKIP_MIN = """
main_let1(w0) = B(w0, w0);
expression: main_let1(main_let1(B(z, z)))
"""

# Regression pin for the string matching example's last (and skip-unfold
# minimum) graph: the canonical form this implementation produces, frozen so
# unintended changes surface.
# It is an equally correct fully specialized matcher that restarts scanning
# one position later instead of re-testing the failed character, so each
# state carries a single parameter.
KMP_LAST_CANONICAL_PIN = """\
F0 = ordinary/1 F1(v0)
F1 = matching/0 Cons/2 F2(v0, v1) | Nil/0 False()
F2 = matching/1 False/0 F0(v0) | True/0 F3(v0)
F3 = matching/0 Cons/2 F4(v0, v1) | Nil/0 False()
F4 = matching/1 False/0 F0(v0) | True/0 F5(v0)
F5 = ordinary/1 F6(v0)
F6 = matching/0 Cons/2 F7(v0, v1) | Nil/0 False()
F7 = matching/1 False/0 True() | True/0 F5(v0)
expression: F0(s)
"""
