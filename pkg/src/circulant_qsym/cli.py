"""
`qsym` command line: analysis, certification, maximality checks, witnesses,
atlases and bound scans. Machine output is JSON (or CSV) on stdout; logs and
errors go to stderr.
"""
import argparse
import json
import logging
import sys

from circulant_qsym.config import Config
from circulant_qsym.errors import InvalidParameter, QsymError, UsageError
from circulant_qsym.explore import (
    enumerate_atlas, scan_bound_tightness, validate_scan_parameters,
    write_atlas_csv, write_jsonl, write_scan_csv
)
from circulant_qsym.graph import (
    automorphism_summary, brute_force_automorphism_count, cycle_graph, empty_graph, from_connection_set, multiplier_group
)
from circulant_qsym.maximality import (
    ModularRing, SolutionClass, check_2maximal_mod_p, check_2maximal_roots_of_unity,
    check_maximality_consequences, norm_obstruction
)
from circulant_qsym.modular import SubgroupOfUnits, is_prime, subgroup_of_order
from circulant_qsym.qsym import C4_VERTEX_ORDER, bound_for_type, certify
from circulant_qsym.spectral import (
    eigenspace_partition, numeric_eigenvalue_clusters, verify_coset_eigenvalue_law
)
from circulant_qsym.witness import (
    build_u_pq, extend_with_identity_tail, noncommuting_pair,
    verify_commutation, verify_magic_unitary
)

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class QsymArgumentParser(argparse.ArgumentParser):
    """Reports bad command lines as UsageError instead of exiting."""

    def error(self, message):
        raise UsageError(message)


def comma_ints(text):
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def build_parser():
    common = QsymArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="INFO with -v, DEBUG with -vv")

    as_json = QsymArgumentParser(add_help=False)
    as_json.add_argument("--json", action="store_true", help="Machine-readable JSON output")

    parser = QsymArgumentParser(prog="qsym", description="Quantum symmetries of circulant graphs")
    commands = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (("analyze", "Invariants, spectrum and automorphisms"),
                            ("certify", "Quantum symmetry verdict with its rule chain")):
        sub = commands.add_parser(name, parents=[common, as_json], help=help_text)
        sub.add_argument("--n", type=int, required=True)
        sub.add_argument("--s", type=comma_ints, required=True, help="Connection set, e.g. 1,4")

    sub = commands.add_parser("maximal", parents=[common, as_json], help="2-maximality of a subgroup of Z_p*")
    sub.add_argument("--p", type=int, required=True)
    group = sub.add_mutually_exclusive_group(required=True)
    group.add_argument("--order", type=int, help="The unique subgroup of this order")
    group.add_argument("--elements", type=comma_ints, help="Explicit subgroup elements")

    sub = commands.add_parser("roots", parents=[common, as_json], help="2-maximality of the k-th roots of unity")
    sub.add_argument("--k", type=int, required=True)

    sub = commands.add_parser("bound", parents=[common], help="Print 6^phi(k)")
    sub.add_argument("--k", type=int, required=True)

    sub = commands.add_parser("witness", parents=[common, as_json], help="Verify a magic unitary witness")
    sub.add_argument("--graph", required=True, help="x4, c4 or xn:<n>")
    sub.add_argument("--order", type=comma_ints, help="1-based vertex order, e.g. 1,3,2,4")

    sub = commands.add_parser("atlas", parents=[common], help="All circulant graphs on p vertices")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--out")
    sub.add_argument("--csv", action="store_true")

    sub = commands.add_parser("scan", parents=[common], help="2-maximality of order-k subgroups up to pmax")
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--pmax", type=int, help="Largest prime scanned (default from config)")
    sub.add_argument("--out")
    sub.add_argument("--csv", action="store_true")
    sub.add_argument("--threads", type=int)
    sub.add_argument("--norms", action="store_true", help="Attach the sum-set norm certificate to JSON rows")

    sub = commands.add_parser("view", parents=[common], help="Browse the atlas in a window")
    sub.add_argument("--p", type=int, required=True)

    return parser


# =========================
# OUTPUT
# =========================

def _dump(document):
    return json.dumps(document, indent=2)


def _emit(args, stdout, document, text_lines):
    if getattr(args, "json", False):
        stdout.write(_dump(document) + "\n")
    else:
        stdout.write("\n".join(text_lines) + "\n")


class _Output:
    """stdout, or a file opened for `--out`."""

    def __init__(self, path, stdout):
        self.path = path
        self.stdout = stdout
        self._file = None

    def __enter__(self):
        if self.path is None:
            return self.stdout
        self._file = open(self.path, "w", encoding="utf-8", newline="")
        return self._file

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self._file is not None:
            self._file.close()


def _set_s(values):
    return "{" + ", ".join(map(str, values)) + "}"


# =========================
# COMMANDS
# =========================

def cmd_analyze(args, config, stdout):
    g = from_connection_set(args.n, args.s)
    E = multiplier_group(g)
    document = {
        "graph": {"n": g.n, "s": list(g.connection_set)},
        "degree": g.degree,
        "E": list(E.elements),
        "k": E.order,
    }
    lines = [str(g), f"degree {g.degree}", f"E = {_set_s(E.elements)}", f"type k = {E.order}"]
    if is_prime(g.n):
        profile = eigenspace_partition(g)
        law = verify_coset_eigenvalue_law(g)
        clusters = numeric_eigenvalue_clusters(g, tolerance=config.tolerance())
        automorphisms = automorphism_summary(g)
        document.update({
            "classes": profile.class_count,
            "spectrum": profile.to_dict(),
            "coset_law": law.to_dict(),
            "numeric_spectrum": clusters.to_dict(),
            "automorphisms": automorphisms.to_dict(),
        })
        lines += [
            f"eigenspace classes {profile.class_count}, distinct eigenvalues {profile.distinct_exact_values()}",
            f"coset law {'holds' if law.holds else 'FAILS at ' + str(law.counterexample)}",
            f"numeric clusters {clusters.count} (tolerance {clusters.tolerance:g})",
            f"affine automorphisms {automorphisms.affine_count}"
            + (" (= |Aut|)" if automorphisms.affine_is_full_aut else ""),
        ]
    else:
        lines.append(f"n = {g.n} is not prime; spectral analysis needs a prime")
    if g.n <= int(config["brute_force_max_n"]):
        count = brute_force_automorphism_count(g, max_n=int(config["brute_force_max_n"]), threads=config.threads())
        document["brute_force_automorphisms"] = count
        lines.append(f"|Aut| = {count} by exhaustive search")
    _emit(args, stdout, document, lines)


def cmd_certify(args, config, stdout):
    g = from_connection_set(args.n, args.s)
    certificate = certify(g, max_stored=int(config["max_stored_solutions"]))
    lines = [f"{g}: {certificate.verdict.value}"]
    lines += [f"  {step.rule}: {step.detail}" for step in certificate.rule_chain]
    _emit(args, stdout, certificate.to_dict(), lines)


def cmd_maximal(args, config, stdout):
    if not is_prime(args.p):
        raise InvalidParameter(f"--p must be a prime, got {args.p}")
    if args.order is not None:
        E = subgroup_of_order(args.p, args.order)
    else:
        E = SubgroupOfUnits(args.p, args.elements)
    report = check_2maximal_mod_p(E, args.p, max_stored=int(config["max_stored_solutions"]))
    consequences = check_maximality_consequences(E.elements, ModularRing(args.p))
    document = report.to_dict()
    document["consequences"] = consequences.to_dict()
    lines = [
        f"E = {_set_s(E.elements)} in Z_{args.p}*: "
        + ("2-maximal" if report.is_2maximal else "NOT 2-maximal"),
        "solutions: " + ", ".join(f"{kind.value} {report.counts.get(kind, 0)}" for kind in SolutionClass),
    ]
    if report.first_genuine:
        lines.append(f"first genuine solution (a, b, c, d) = {report.first_genuine}")
    _emit(args, stdout, document, lines)


def cmd_roots(args, config, stdout):
    report = check_2maximal_roots_of_unity(args.k, max_stored=int(config["max_stored_solutions"]))
    rows = norm_obstruction(args.k)
    document = report.to_dict()
    document["norm_obstruction"] = [row.to_dict() for row in rows]
    lines = [f"{args.k}-th roots of unity: " + ("2-maximal" if report.is_2maximal else "NOT 2-maximal")]
    lines += [
        f"  z^{row.exponent} (order {row.root_order}): N(1 - z) = {row.norm}, 2^phi = {row.power_of_two}"
        for row in rows
    ]
    _emit(args, stdout, document, lines)


def cmd_bound(args, config, stdout):
    stdout.write(f"{bound_for_type(args.k)}\n")


def _witness_graph(name):
    if name == "x4":
        return empty_graph(4), build_u_pq(), None
    if name == "c4":
        return cycle_graph(4), build_u_pq(), C4_VERTEX_ORDER
    if name.startswith("xn:"):
        try:
            n = int(name[3:])
        except ValueError:
            raise UsageError(f"--graph xn:<n> needs an integer, got {name!r}") from None
        if n < 4:
            raise InvalidParameter(f"X_n carries a quantum witness only for n >= 4, got {n}")
        return empty_graph(n), extend_with_identity_tail(build_u_pq(), n), None
    raise UsageError(f"--graph must be x4, c4 or xn:<n>, got {name!r}")


def cmd_witness(args, config, stdout):
    g, witness, order = _witness_graph(args.graph)
    if args.order is not None:
        order = tuple(v - 1 for v in args.order)
    magic = verify_magic_unitary(witness)
    commutes = verify_commutation(witness, g, order)
    pair = noncommuting_pair(witness)
    shown_order = [v + 1 for v in (order if order is not None else range(g.n))]
    document = {
        "graph": {"n": g.n, "s": list(g.connection_set)},
        "vertex_order": shown_order,
        "magic_unitary": magic.to_dict(),
        "commutes": commutes.to_dict(),
        "noncommuting_pair": [list(cell) for cell in pair] if pair else None,
        "witness": witness.to_dict(),
    }
    lines = [
        f"{witness.label} on {g}, vertex order {','.join(map(str, shown_order))}",
        f"magic unitary: {'yes' if magic else 'no (' + magic.failure + ')'}",
        f"commutes with adjacency: {'yes' if commutes else 'no'}",
        f"noncommuting entries: {pair if pair else 'none'}",
    ]
    _emit(args, stdout, document, lines)


def cmd_atlas(args, config, stdout):
    entries = enumerate_atlas(
        args.p,
        max_p=int(config["atlas_max_p"]),
        threads=config.threads(),
        max_stored=int(config["max_stored_solutions"]),
    )
    with _Output(args.out, stdout) as stream:
        if args.csv:
            write_atlas_csv(entries, stream)
        else:
            write_jsonl(entries, stream)


def cmd_scan(args, config, stdout):
    p_max = args.pmax if args.pmax is not None else int(config["scan_p_max"])
    validate_scan_parameters(args.k, p_max)
    threads = args.threads if args.threads is not None else config.threads()
    if threads < 1:
        raise UsageError(f"--threads must be at least 1, got {threads}")
    rows = scan_bound_tightness(args.k, p_max, threads=threads, with_norms=args.norms and not args.csv)
    with _Output(args.out, stdout) as stream:
        if args.csv:
            write_scan_csv(rows, stream)
        else:
            write_jsonl(rows, stream)


def cmd_view(args, config, stdout):
    from circulant_qsym.atlas_viewer import show_atlas
    show_atlas(args.p, max_p=int(config["atlas_max_p"]), threads=config.threads())


COMMANDS = {
    "analyze": cmd_analyze,
    "certify": cmd_certify,
    "maximal": cmd_maximal,
    "roots": cmd_roots,
    "bound": cmd_bound,
    "witness": cmd_witness,
    "atlas": cmd_atlas,
    "scan": cmd_scan,
    "view": cmd_view,
}


# =========================
# ENTRY POINTS
# =========================

def _attach_log_handler(verbosity, stderr):
    """Routes package logs to this run's stderr; returns the handler for removal."""
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    handler = logging.StreamHandler(stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    package_logger = logging.getLogger("circulant_qsym")
    package_logger.setLevel(level)
    package_logger.addHandler(handler)
    package_logger.propagate = False
    return handler


def _detach_log_handler(handler):
    package_logger = logging.getLogger("circulant_qsym")
    package_logger.removeHandler(handler)
    package_logger.propagate = True


def _report_error(error, wants_json, stderr):
    if wants_json:
        stderr.write(json.dumps(error.to_dict()) + "\n")
    else:
        stderr.write(f"qsym: {type(error).__name__}: {error}\n")
    return error.exit_code


def run(argv=None, stdout=None, stderr=None, config=None):
    """Run one command. Returns the process exit status."""
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    wants_json = "--json" in argv

    try:
        args = build_parser().parse_args(argv)
    except QsymError as e:
        return _report_error(e, wants_json, stderr)
    except SystemExit as e:
        # --help
        return e.code or 0

    handler = _attach_log_handler(args.verbose, stderr)
    try:
        if config is None:
            config = Config()
        if not config.config_file.exists():
            # first run leaves a config.json with the defaults to edit
            config.save()
        COMMANDS[args.command](args, config, stdout)
    except QsymError as e:
        logger.debug("%s failed", args.command, exc_info=True)
        return _report_error(e, wants_json, stderr)
    finally:
        _detach_log_handler(handler)
    return 0


def main():
    sys.exit(run())
