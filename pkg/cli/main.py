"""
hopf: certify Hopf algebra axioms, centers, cocenters and exact sequences.

    python -m cli.main hopf-center --builtin group-algebra:Q8
    python -m cli.main cocenter --builtin sweedler --format json
    python -m cli.main sequence --kind cocentral --builtin small-quantum-sl2:p=3
    python -m cli.main verify --file samples/sweedler_h4.json

Exit codes: 0 every certificate passed, 1 a certificate failed or an engine
check raised, 2 malformed input or bad usage.
"""
import argparse
import json
import logging
import os
import sys
import tempfile
import time
from typing import Callable, Dict, List, Optional

from algebra.catalog import BUILTINS, parse_builtin
from algebra.constructions import (
    TWIST_CONVENTION, certify_hopf_subalgebra, coboundary_cocycle, drinfeld_twist, dual_hopf, verify_two_cocycle,
)
from algebra.hopf import HopfAlgebra, verify_axioms
from algebra.pointed import find_hopf_isomorphism
from cli.fileformat import digest, parse, to_model
from engine.center import adjoint_identities, algebra_center, central_sequence, hopf_center
from engine.cocenter import cocentral_sequence, hopf_cocenter
from engine.sequences import CONVENTION, FreenessCertificate, freeness_certificate, hopf_kernel
from shared.config import settings
from shared.errors import HopfError, ParseError
from shared.linalg import SparseVec, Subspace
from shared.models import Certificate, Report, SubspaceReport, outcome

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

COMMANDS = ("verify", "center", "hopf-center", "cocenter", "sequence", "dual", "twist", "freeness")


def subspace_report(H: HopfAlgebra, V: Subspace) -> SubspaceReport:
    return SubspaceReport(
        dim=V.dim,
        ambient_dim=V.ambient_dim,
        basis=[{H.labels[i]: H.field.format(c) for i, c in sorted(row.items())} for row in V.rows],
    )


def parse_element(H: HopfAlgebra, text: str) -> SparseVec:
    """"1=1,x=-1/2" -> sparse vector over the labels of H"""
    vector: SparseVec = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        label, sep, coeff = part.partition("=")
        if not sep:
            raise ParseError(f"expected label=coefficient, got {part!r}", "--element")
        try:
            i = H.index(label.strip())
        except HopfError as e:
            raise ParseError(e.detail, "--element")
        value = H.field.parse(coeff)
        vector[i] = vector.get(i, H.field.zero) + value
    return {i: c for i, c in vector.items() if c}


def freeness_values(H: HopfAlgebra, freeness: FreenessCertificate) -> Dict[str, object]:
    return {
        "freeness": freeness.status.value,
        "freeness_rank": freeness.rank,
        "freeness_steps": freeness.steps,
        "cofactor_basis": [H.format_vector(a) for a in freeness.cofactor_basis],
    }


class Runner:
    """Runs one analysis on one algebra and builds its report"""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.timings: Dict[str, float] = {}
        self.handlers: Dict[str, Callable[[HopfAlgebra], Report]] = {
            "verify": self.verify,
            "center": self.center,
            "hopf-center": self.hopf_center,
            "cocenter": self.cocenter,
            "sequence": self.sequence,
            "dual": self.dual,
            "twist": self.twist,
            "freeness": self.freeness,
        }

    def timed(self, label: str, action: Callable):
        start = time.perf_counter()
        result = action()
        self.timings[label] = round(time.perf_counter() - start, 6)
        return result

    def load(self) -> HopfAlgebra:
        """Algebra from --file or --builtin"""
        if self.args.file:
            return parse(self.args.file)
        return parse_builtin(self.args.builtin)

    def report(self, H: HopfAlgebra, kind: str, certificates: List[Certificate], **fields) -> Report:
        return Report(
            kind=kind,
            algebra=H.name,
            field=H.field.descriptor,
            input_digest=digest(H),
            passed=all(c.passed for c in certificates),
            certificates=certificates,
            **fields,
        )

    def axioms(self, H: HopfAlgebra) -> Certificate:
        certificate = self.timed("axioms", lambda: verify_axioms(H))
        if not certificate.passed:
            failure = certificate.failures()[0]
            raise HopfError(f"{H.name} is not a Hopf algebra: {failure.name} fails", failure.witness)
        return certificate

    def run(self) -> Report:
        H = self.timed("load", self.load)
        logger.info("running %s on %s (dim %d)", self.args.command, H.name, H.dim)
        report = self.handlers[self.args.command](H)
        if self.args.timings:
            report.timings = dict(self.timings)
        return report

    # -- commands ------------------------------------------------------------

    def verify(self, H: HopfAlgebra) -> Report:
        certificate = self.timed("axioms", lambda: verify_axioms(H))
        return self.report(
            H, "verify", [certificate],
            dimensions={"A": H.dim},
            values={"commutative": H.is_commutative(), "cocommutative": H.is_cocommutative()},
        )

    def center(self, H: HopfAlgebra) -> Report:
        axioms = self.axioms(H)
        Z = self.timed("center", lambda: algebra_center(H))
        identities = self.timed("adjoint", lambda: adjoint_identities(H, Z, seed=self.args.seed))
        return self.report(
            H, "center", [axioms, identities],
            dimensions={"A": H.dim, "Z": Z.dim},
            subspaces={"Z": subspace_report(H, Z)},
        )

    def hopf_center(self, H: HopfAlgebra) -> Report:
        axioms = self.axioms(H)
        hz = self.timed("hopf-center", lambda: hopf_center(H))
        return self.report(
            H, "hopf-center", [axioms, hz.certificate],
            dimensions={"A": H.dim, "Z": hz.center.dim, "HZ": hz.dim},
            subspaces={"Z": subspace_report(H, hz.center), "HZ": subspace_report(H, hz.subspace)},
            values={"characterizations_agree": True},
        )

    def cocenter(self, H: HopfAlgebra) -> Report:
        axioms = self.axioms(H)
        cocenter = self.timed("cocenter", lambda: hopf_cocenter(H))
        return self.report(
            H, "cocenter", [axioms, cocenter.certificate],
            dimensions={"A": H.dim, "HC": cocenter.algebra.dim, "W": cocenter.cocentral.dim,
                        "HZ(A*)": cocenter.dual_center.dim},
            subspaces={"kernel": subspace_report(H, cocenter.kernel),
                       "W": subspace_report(H, cocenter.cocentral),
                       "closure(W)": subspace_report(H, cocenter.closure)},
            values={"cocenter_cocommutative": cocenter.algebra.is_cocommutative()},
        )

    def sequence(self, H: HopfAlgebra) -> Report:
        axioms = self.axioms(H)
        if self.args.kind == "central":
            result = self.timed("sequence", lambda: central_sequence(H, seed=self.args.seed, budget=self.args.budget))
            C, B = result.subalgebra.algebra, result.quotient.algebra
            subspaces = {"HZ": subspace_report(H, result.hopf_center.subspace),
                         "kernel": subspace_report(H, result.quotient.ideal)}
            values = {"normal": result.normal}
        else:
            result = self.timed("sequence", lambda: cocentral_sequence(H, seed=self.args.seed, budget=self.args.budget))
            C, B = result.sequence.iota.source, result.cocenter.algebra
            subspaces = {"hopf_kernel": subspace_report(H, result.hopf_kernel),
                         "kernel": subspace_report(H, result.cocenter.kernel),
                         "D": subspace_report(H, result.generated.subspace),
                         "ad_invariants": subspace_report(H, result.invariants)}
            values = {
                "normal": result.normal,
                "d_in_hopf_kernel": result.d_in_kernel,
                "d_equals_hopf_kernel": result.d_equals_kernel,
                "ad_multiplicative": result.homomorphism.multiplicative,
                "ad_into_center": result.homomorphism.containment,
                "cocenter_group_algebra": result.group_check.outcome.value,
            }
        values.update(freeness_values(H, result.freeness))
        values["round_trip"] = result.round_trip is not None
        return self.report(
            H, f"sequence-{self.args.kind}", [axioms, result.sequence.certificate] + result.certificates,
            dimensions={"C": C.dim, "A": H.dim, "B": B.dim},
            subspaces=subspaces,
            values=values,
            notes=[CONVENTION],
        )

    def dual(self, H: HopfAlgebra) -> Report:
        axioms = self.axioms(H)
        D = self.timed("dual", lambda: dual_hopf(H))
        certificates = [axioms, verify_axioms(D)]
        values: Dict[str, object] = {"dual": to_model(D).model_dump(mode="json")}
        notes: List[str] = []
        if self.args.self_dual:
            try:
                iso = self.timed("isomorphism", lambda: find_hopf_isomorphism(H, D))
                values["self_dual"] = iso is not None
                if iso is not None:
                    values["isomorphism"] = [D.format_vector(column) for column in iso.columns]
            except HopfError as e:
                values["self_dual"] = None
                notes.append(f"isomorphism search not applicable: {e.detail}")
        return self.report(H, "dual", certificates, dimensions={"A": H.dim, "A*": D.dim}, values=values, notes=notes)

    def twist(self, H: HopfAlgebra) -> Report:
        if not self.args.element:
            raise ParseError("twist needs --element, e.g. --element 1=1,x=1", "--element")
        axioms = self.axioms(H)
        u = parse_element(H, self.args.element)
        psi = coboundary_cocycle(H, u)
        cocycle = verify_two_cocycle(H, psi)
        T = self.timed("twist", lambda: drinfeld_twist(H, psi))
        twisted = verify_axioms(T)
        before, after = hopf_center(H), hopf_center(T)
        invariance = Certificate(
            subject=f"twist-invariance:{H.name}",
            checks=[outcome("hopf-center-invariant", before.subspace == after.subspace,
                            [before.dim, after.dim], "HZ changes under the twist")],
        )
        return self.report(
            H, "twist", [axioms, cocycle, twisted, invariance],
            dimensions={"A": H.dim, "HZ": before.dim, "HZ(twisted)": after.dim},
            subspaces={"HZ": subspace_report(H, before.subspace), "HZ(twisted)": subspace_report(T, after.subspace)},
            values={"cocycle": H.format_tensor(psi), "twisted": to_model(T).model_dump(mode="json")},
            notes=[TWIST_CONVENTION],
        )

    def over(self, H: HopfAlgebra) -> Subspace:
        target = self.args.over
        if target == "hopf-center":
            return hopf_center(H).subspace
        if target == "cocenter-kernel":
            return hopf_kernel(hopf_cocenter(H).projection)
        vectors = []
        for label in filter(None, (p.strip() for p in target.split(","))):
            try:
                vectors.append(H.basis_vector(H.index(label)))
            except HopfError as e:
                raise ParseError(e.detail, "--over")
        return Subspace.span(H.field, H.dim, vectors)

    def freeness(self, H: HopfAlgebra) -> Report:
        axioms = self.axioms(H)
        C = self.over(H)
        subalgebra = certify_hopf_subalgebra(H, C)
        result = self.timed("freeness", lambda: freeness_certificate(H, C, budget=self.args.budget, seed=self.args.seed))
        found = Certificate(
            subject=f"freeness:{H.name}",
            checks=[outcome("free-module-basis", result.found, [], result.detail or result.status.value)],
        )
        return self.report(
            H, "freeness", [axioms, subalgebra, found],
            dimensions={"A": H.dim, "C": C.dim},
            subspaces={"C": subspace_report(H, C)},
            values=freeness_values(H, result),
        )


# -- rendering -------------------------------------------------------------------

def render_json(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json", exclude_none=True), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def render_text(report: Report) -> str:
    lines = [f"{'✅' if report.passed else '❌'} {report.kind} of {report.algebra} over {report.field}"]
    for name, dim in report.dimensions.items():
        lines.append(f"   dim {name} = {dim}")
    for certificate in report.certificates:
        marker = "✅" if certificate.passed else "❌"
        lines.append(f"{marker} {certificate.subject} ({len(certificate.checks)} checks)")
        for check in certificate.failures():
            lines.append(f"   {check.name}: {check.detail or 'failed'} witness={check.witness}")
    for name, subspace in report.subspaces.items():
        lines.append(f"   {name}: dim {subspace.dim} of {subspace.ambient_dim}")
    for key, value in report.values.items():
        if not isinstance(value, (dict, list)):
            lines.append(f"   {key}: {value}")
    for note in report.notes:
        lines.append(f"   note: {note}")
    if report.timings:
        lines.append("   timings: " + ", ".join(f"{k}={v:.3f}s" for k, v in report.timings.items()))
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    """Write to a temp file in the target directory, then rename over the target"""
    directory = os.path.dirname(os.path.abspath(path))
    handle, temp_path = tempfile.mkstemp(dir=directory, prefix=".report-", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8") as stream:
            stream.write(text)
        os.replace(temp_path, path)
    except OSError:
        if os.path.exists(temp_path):
            os.unlink(temp_path)
        raise


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hopf", description="Exact Hopf algebra center and cocenter engine")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        sub = subparsers.add_parser(command)
        source = sub.add_mutually_exclusive_group(required=True)
        source.add_argument("--file", help="algebra file in the JSON structure-constant schema")
        source.add_argument("--builtin", help=f"name[:params], one of {', '.join(BUILTINS)}")
        sub.add_argument("--format", choices=("text", "json"), default="text")
        sub.add_argument("--seed", type=int, default=None, help="seed for sampled property checks")
        sub.add_argument("--budget", type=int, default=None, help="freeness search budget")
        sub.add_argument("--exhaustive", action="store_true", help="check every basis tuple, never sample")
        sub.add_argument("--output", help="write the report here instead of stdout")
        sub.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
        if command == "sequence":
            sub.add_argument("--kind", choices=("central", "cocentral"), required=True)
        if command == "dual":
            sub.add_argument("--self-dual", action="store_true", help="search a Hopf isomorphism A -> A*")
        if command == "twist":
            sub.add_argument("--element", help="invertible u with ε(u) = 1, as label=coeff,...")
        if command == "freeness":
            sub.add_argument("--over", required=True,
                             help="hopf-center, cocenter-kernel, or comma-separated basis labels")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=settings.log_level,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if args.seed is not None:
        settings.seed = args.seed
    if args.exhaustive:
        settings.exhaustive_limit = sys.maxsize
    try:
        report = Runner(args).run()
    except ParseError as e:
        print(f"❌ input error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HopfError as e:
        print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAILED
    text = render_json(report) if args.format == "json" else render_text(report)
    if args.output:
        try:
            write_atomic(args.output, text)
        except OSError as e:
            print(f"❌ cannot write report: {e}", file=sys.stderr)
            return EXIT_USAGE
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
