import pytest

from flatlab.kernel.field import CoefficientField
from flatlab.lab.audits import AuditKind
from flatlab.problem.problem_file import (
    ProblemNameError,
    ProblemSyntaxError,
    TaskDeclaration,
    TaskKind,
)
from flatlab.problem.problem_parser import ProblemParser, audit_kind, parse_problem, read_problem

pytestmark = pytest.mark.usefixtures("disable_logging")

HEADER = "field Q\nbase R = poly(s, t)\n"


class TestParseProblem:
    def test_ideal_module(self, corpus_path):
        problem = read_problem(corpus_path / "ideal_module.flat")
        assert problem.field == CoefficientField.rationals()
        assert problem.base_name == "R"
        assert problem.base_variables == ("s", "t")
        module = problem.modules["M"]
        assert module.algebra == "R"
        assert module.gens == 2
        assert module.relations == (("t", "-s"),)
        assert module.line == 5
        assert [task.kind for task in problem.tasks] == [
            TaskKind.Torsion,
            TaskKind.Flat,
            TaskKind.Dim2,
            TaskKind.Codepth,
            TaskKind.Depth,
            TaskKind.Ass,
            TaskKind.Bench,
        ]
        assert problem.tasks[1].options == {"d": "2", "expect": "NotFlat"}

    def test_algebra(self, corpus_path):
        problem = read_problem(corpus_path / "sqrt_s.flat")
        algebra = problem.algebras["A"]
        assert algebra.parent == "R"
        assert algebra.variables == ("u",)
        assert algebra.relations == ("u^2 - s",)
        assert problem.ambient_variables("A") == ("s", "t", "u")

    def test_localization(self, corpus_path):
        problem = read_problem(corpus_path / "localized.flat")
        algebra = problem.algebras["L"]
        assert algebra.variables == ()
        assert algebra.localizations == ["s"]
        assert problem.ambient_variables("L") == ("s", "t", "z")

    def test_prime_field(self):
        problem = parse_problem("field F 7\nbase R = poly(x)\nmodule M over R : gens 1 ; rel (8*x)\n")
        assert problem.field.characteristic == 7
        assert problem.modules["M"].relations == (("x",),)

    def test_canonical_polynomials(self):
        problem = parse_problem(HEADER + "module M over R : gens 2 ; rel (s*(t + 1), 2/4*t^2 - t*t)\n")
        assert problem.modules["M"].relations == (("s*t + s", "-1/2*t^2"),)

    def test_comments_and_blank_lines(self):
        problem = parse_problem("# header\n\nfield Q  # rationals\n" + "base R = poly(s)\n")
        assert problem.base_variables == ("s",)
        assert problem.tasks == []

    def test_nested_algebras(self):
        text = HEADER + "algebra A = R[u] / (u^2 - s)\nalgebra B = A[v] / (v^2 - u)\n"
        problem = parse_problem(text)
        assert problem.ambient_variables("B") == ("s", "t", "u", "v")
        assert problem.algebras["B"].relations == ("v^2 - u",)

    def test_task_text(self):
        problem = parse_problem(HEADER + "module M over R : gens 1\ntask   flat  M  d=3\n")
        task = problem.tasks[0]
        assert task.text == "flat M d=3"
        assert task.int_option("d") == 3
        assert task.int_option("r", 1) == 1

    def test_audit_kinds(self):
        assert audit_kind("rigidity") == AuditKind.TorRigidity
        assert audit_kind("codepth-duality") == AuditKind.CodepthDuality
        assert audit_kind("all") is None
        with pytest.raises(ValueError):
            audit_kind("unknown")

    def test_split_top_level(self):
        assert ProblemParser.split_top_level("a, (b, c), d", 10) == [
            ("a", 10), (" (b, c)", 12), (" d", 20)
        ]

    @pytest.mark.parametrize(
        "name",
        [
            "free", "sqrt_s", "localized", "polynomial_extension", "torsion",
            "ideal_module", "mixed_sum", "nonflat_algebra", "unit_quotient",
            "disjoint_support", "transverse", "smith_family", "prime_field",
            "dim1_torsion", "nonsmooth_witness",
        ],
    )
    def test_printed_corpus_parses_back(self, corpus_path, name):
        problem = read_problem(corpus_path / f"{name}.flat")
        assert parse_problem(problem.text()) == problem


class TestProblemErrors:
    @pytest.mark.parametrize(
        "text, message",
        [
            ("modul M over R : gens 1", "line 3, column 1: Unknown statement 'modul'"),
            ("module M over R : gens 2 ; rel (s)", "Relation with 1 entries for 2 generators"),
            ("module M over R : gens 1 ; rel (u)", "Unknown variable 'u'"),
            ("module M over R : gens 1 ; (s)", "Expected 'rel (...)'"),
            ("module M over R : gens 1 ; rel (s +)", "line 3"),
            ("algebra A = R[s]", "already in scope"),
            ("algebra A = R[u, u]", "Duplicate variable 'u'"),
            ("module M over R : gens 1\ntask frobnicate M", "Unknown task 'frobnicate'"),
            ("module M over R : gens 1\ntask depth M d=2", "not valid for task depth"),
            ("module M over R : gens 1\ntask flat M d=two", "needs an integer"),
            ("module M over R : gens 1\ntask flat M d=2 M", "Argument 'M' after options"),
            ("module M over R : gens 1\ntask tor M", "expects 2 module name(s)"),
            ("module M over R : gens 1\ntask audit frobnicate M", "Unknown audit"),
            ("module M over R : gens 1\ntask oracle newton M", "oracle smith|fitting"),
            ("algebra L = R[]\nlocalize L at s - s", "Cannot localize at zero"),
            (
                "algebra L = R[]\nmodule M over L : gens 1\nlocalize L at s",
                "localized after being used",
            ),
            ("base S = poly(x)", "Only one base ring"),
            ("field F 7", "before the base ring"),
        ],
    )
    def test_syntax_errors(self, text, message):
        with pytest.raises(ProblemSyntaxError) as error:
            parse_problem(HEADER + text + "\n")
        assert message in str(error.value)

    def test_error_position(self):
        with pytest.raises(ProblemSyntaxError) as error:
            parse_problem(HEADER + "module M over R : gens 1 ; rel (s + q)\n")
        assert error.value.line == 3
        assert error.value.column == 37

    def test_field_must_be_prime(self):
        with pytest.raises(ProblemSyntaxError):
            parse_problem("field F 6\n")

    def test_no_base_ring(self):
        with pytest.raises(ProblemSyntaxError, match="No base ring declared"):
            parse_problem("field Q\nmodule M over R : gens 1\n")

    @pytest.mark.parametrize(
        "text",
        [
            "module M over A : gens 1",
            "module R over R : gens 1",
            "module M over R : gens 1\nmodule M over R : gens 2",
            "task flat N",
            "localize A at s",
        ],
    )
    def test_name_errors(self, text):
        with pytest.raises(ProblemNameError):
            parse_problem(HEADER + text + "\n")


class TestTaskDeclaration:
    def test_text_without_options(self):
        assert TaskDeclaration(TaskKind.Tor, ("M", "N")).text == "tor M N"

    def test_line_is_not_compared(self):
        assert TaskDeclaration(TaskKind.Depth, ("M",), line=3) == TaskDeclaration(
            TaskKind.Depth, ("M",), line=7
        )
