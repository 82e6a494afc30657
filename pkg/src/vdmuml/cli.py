"""Command-line interface for translating between class files and diagrams.

Subcommands: vdm2uml (classes to one .puml), uml2vdm (.puml to one
.vdmpp per class), roundtrip (in-memory there-and-back comparison) and
check (parse and validate only). Exit codes: 0 success, 1 translation
or validation failure, 2 I/O or parse abort, 64 usage error.
"""

from __future__ import annotations

import argparse
import difflib
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseFailure, TranslationError
from .model import (
    Config,
    Ordering,
    UmlClass,
    UmlModel,
    VdmModel,
    validate_model,
    validate_uml,
)
from .puml_frontend import parse_puml, print_puml
from .transform import canonicalize_model, lossy_members, uml_to_vdm, vdm_to_uml
from .vdm_frontend import parse_vdm, print_vdm

EXIT_OK = 0
EXIT_TRANSLATION = 1
EXIT_IO = 2
EXIT_USAGE = 64

GAMMA0_ENV = "VDMUML_GAMMA0"
GAMMA1_ENV = "VDMUML_GAMMA1"


class UsageError(Exception):
    pass


class _InputError(Exception):
    """Unreadable path or failed read; maps to EXIT_IO."""


@dataclass
class RunReport:
    """Outcome of one CLI command, before anything is printed."""

    files_read: tuple[str, ...] = ()
    files_written: tuple[str, ...] = ()
    diagnostics: tuple[str, ...] = ()  # stderr lines
    summary: tuple[str, ...] = ()  # stdout lines
    exit_code: int = EXIT_OK


def _failure(diagnostics: list[str], exit_code: int, files_read=()) -> RunReport:
    return RunReport(
        files_read=tuple(files_read),
        diagnostics=tuple(diagnostics),
        exit_code=exit_code,
    )


def load_config(flags, environment) -> Config:
    """Build a Config with precedence flags > environment > defaults."""

    def pick(flag_value, env_name: str, default: int, label: str) -> int:
        raw = flag_value
        if raw is None:
            raw = environment.get(env_name)
        if raw is None:
            return default
        try:
            value = int(raw)
        except (TypeError, ValueError):
            raise UsageError(f"{label} must be a non-negative integer, got {raw!r}") from None
        if value < 0:
            raise UsageError(f"{label} must be a non-negative integer, got {raw!r}")
        return value

    gamma0 = pick(getattr(flags, "gamma0", None), GAMMA0_ENV, 2, "--gamma0")
    gamma1 = pick(getattr(flags, "gamma1", None), GAMMA1_ENV, 1, "--gamma1")
    ordering_flag = getattr(flags, "ordering", None)
    ordering = Ordering.ALPHABETICAL if ordering_flag == "alpha" else Ordering.INPUT
    return Config(gamma0=gamma0, gamma1=gamma1, ordering=ordering)


# ---------------------------------------------------------------------------
# Shared plumbing


def _collect_vdm_files(inputs: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in inputs:
        path = Path(raw)
        if path.is_dir():
            files.extend(sorted(p for p in path.rglob("*.vdmpp") if p.is_file()))
        elif path.is_file():
            files.append(path)
        else:
            raise _InputError(f"cannot read '{raw}': no such file or directory")
    return files


def _read(path: Path) -> str:
    try:
        # utf-8-sig tolerates editor-written byte order marks
        return path.read_text(encoding="utf-8-sig")
    except OSError as e:
        raise _InputError(f"cannot read '{path}': {e.strerror or e}") from None


def _parse_workspace(files: list[Path]) -> tuple[VdmModel | None, list[str]]:
    """Parse every file into one combined model; returns (model, diagnostics)."""
    diagnostics: list[str] = []
    classes = []
    for path in files:
        text = _read(path)
        try:
            model = parse_vdm(text, origin=str(path))
        except ParseFailure as failure:
            diagnostics.extend(_parse_error_lines(failure))
            continue
        classes.extend(model.classes)
    if diagnostics:
        return None, diagnostics
    return VdmModel(tuple(classes)), []


def _parse_error_lines(failure: ParseFailure) -> list[str]:
    lines = []
    for e in failure.errors:
        message = e.message + (f" (expected {e.expected})" if e.expected else "")
        lines.append(f"{e.span}: error: {message}")
    return lines


def _diagnostic_lines(diags) -> list[str]:
    return [str(d) for d in diags]


def _default_puml_output(inputs: list[str]) -> Path:
    paths = [Path(p) for p in inputs]
    if len(paths) == 1 and paths[0].is_file():
        return paths[0].with_suffix(".puml")
    if len(paths) == 1 and paths[0].is_dir():
        return paths[0] / f"{paths[0].resolve().name}.puml"
    common = Path(os.path.commonpath([str(p.resolve()) for p in paths]))
    if common.is_file():
        common = common.parent
    return common / f"{common.name}.puml"


# ---------------------------------------------------------------------------
# Commands


def cmd_vdm2uml(inputs: list[str], output: str | None, config: Config) -> RunReport:
    try:
        files = _collect_vdm_files(inputs)
    except _InputError as e:
        return _failure([f"error: {e}"], EXIT_IO)
    if not files:
        return _failure(["error: no .vdmpp files found"], EXIT_TRANSLATION)
    try:
        model, diagnostics = _parse_workspace(files)
    except _InputError as e:
        return _failure([f"error: {e}"], EXIT_IO)
    read = tuple(str(p) for p in files)
    if model is None:
        return _failure(diagnostics, EXIT_TRANSLATION, read)
    diags = validate_model(model)
    if diags:
        return _failure(_diagnostic_lines(diags), EXIT_TRANSLATION, read)

    uml = vdm_to_uml(model, config)
    text = print_puml(uml, config)
    out_path = Path(output) if output else _default_puml_output(inputs)
    try:
        out_path.write_text(text, encoding="utf-8", newline="\n")
    except OSError as e:
        return _failure([f"error: cannot write '{out_path}': {e.strerror or e}"], EXIT_IO, read)
    abstracted = sum(1 for _, _, kind in lossy_members(model, config) if kind == "attribute")
    summary = (
        f"wrote {out_path}: {len(uml.classes)} classes, "
        f"{len(uml.associations)} associations, {abstracted} abstracted attributes",
    )
    return RunReport(read, (str(out_path),), (), summary, EXIT_OK)


def cmd_uml2vdm(input_path: str, output_dir: str | None) -> RunReport:
    path = Path(input_path)
    if not path.is_file():
        return _failure([f"error: cannot read '{input_path}': no such file"], EXIT_IO)
    try:
        text = _read(path)
    except _InputError as e:
        return _failure([f"error: {e}"], EXIT_IO)
    read = (str(path),)
    try:
        uml = parse_puml(text, origin=str(path))
    except ParseFailure as failure:
        return _failure(_parse_error_lines(failure), EXIT_TRANSLATION, read)
    diags = validate_uml(uml)
    if diags:
        return _failure(_diagnostic_lines(diags), EXIT_TRANSLATION, read)
    try:
        model = uml_to_vdm(uml)
    except TranslationError as e:
        return _failure([f"error: {p}" for p in e.problems], EXIT_TRANSLATION, read)
    diags = validate_model(model)
    if diags:
        return _failure(_diagnostic_lines(diags), EXIT_TRANSLATION, read)

    out_dir = Path(output_dir) if output_dir else path.parent
    rendered = print_vdm(model)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        written = []
        for name, class_text in rendered:
            target = out_dir / f"{name}.vdmpp"
            target.write_text(class_text, encoding="utf-8", newline="\n")
            written.append(str(target))
    except OSError as e:
        return _failure([f"error: cannot write to '{out_dir}': {e.strerror or e}"], EXIT_IO, read)
    summary = (f"wrote {len(written)} files to {out_dir}",)
    return RunReport(read, tuple(written), (), summary, EXIT_OK)


def cmd_roundtrip(inputs: list[str], config: Config) -> RunReport:
    try:
        files = _collect_vdm_files(inputs)
        if not files:
            return _failure(["error: no .vdmpp files found"], EXIT_IO)
        model, diagnostics = _parse_workspace(files)
    except _InputError as e:
        return _failure([f"error: {e}"], EXIT_IO)
    read = tuple(str(p) for p in files)
    if model is None:
        return _failure(diagnostics, EXIT_IO, read)
    diags = validate_model(model)
    if diags:
        return _failure(_diagnostic_lines(diags), EXIT_IO, read)

    lossy = lossy_members(model, config)
    lossy_pairs = {(c, m) for c, m, _ in lossy}
    lossy_classes = {c for c, _, _ in lossy}
    uml = vdm_to_uml(model, config)
    stripped = UmlModel(
        tuple(
            UmlClass(
                c.name,
                tuple(a for a in c.attributes if (c.name, a.name) not in lossy_pairs),
                tuple(o for o in c.operations if (c.name, o.name) not in lossy_pairs),
            )
            for c in uml.classes
        ),
        uml.generalizations,
        uml.associations,
    )
    try:
        back = uml_to_vdm(stripped)
    except TranslationError as e:
        return _failure([f"error: {p}" for p in e.problems], EXIT_TRANSLATION, read)
    canonical = canonicalize_model(model)

    summary: list[str] = []
    failures = 0
    back_by_name = {c.name: c for c in back.classes}
    for cls in canonical.classes:
        if cls.name in lossy_classes:
            failures += 1
            members = sorted(m for c, m, _ in lossy if c == cls.name)
            summary.append(
                f"FAIL {cls.name}: abstraction loses type information for "
                + ", ".join(f"'{m}'" for m in members)
            )
            continue
        returned = back_by_name.get(cls.name)
        if returned == cls:
            summary.append(f"PASS {cls.name}")
        else:
            failures += 1
            summary.append(f"FAIL {cls.name}: structure differs after the round trip")
            summary.extend(_class_diff(cls, returned))
    summary.append(f"{len(canonical.classes) - failures}/{len(canonical.classes)} classes round-trip")
    if failures == 0:
        return RunReport(read, (), (), tuple(summary), EXIT_OK)
    diagnostics = (f"error: {failures} of {len(canonical.classes)} classes failed the round trip",)
    return RunReport(read, (), diagnostics, tuple(summary), EXIT_TRANSLATION)


def _class_diff(expected, actual) -> list[str]:
    want = print_vdm(VdmModel((expected,)))[0][1].splitlines()
    have = [] if actual is None else print_vdm(VdmModel((actual,)))[0][1].splitlines()
    diff = difflib.unified_diff(want, have, "expected", "round-tripped", lineterm="", n=1)
    return [f"  {line}" for line in diff]


def cmd_check(input_path: str) -> RunReport:
    path = Path(input_path)
    if path.suffix == ".puml":
        if not path.is_file():
            return _failure([f"error: cannot read '{input_path}': no such file"], EXIT_IO)
        try:
            text = _read(path)
        except _InputError as e:
            return _failure([f"error: {e}"], EXIT_IO)
        read = (str(path),)
        try:
            uml = parse_puml(text, origin=str(path))
        except ParseFailure as failure:
            return _failure(_parse_error_lines(failure), EXIT_TRANSLATION, read)
        diags = validate_uml(uml)
        if diags:
            return _failure(_diagnostic_lines(diags), EXIT_TRANSLATION, read)
        return RunReport(read, (), (), (f"ok: {len(uml.classes)} classes",), EXIT_OK)

    try:
        files = _collect_vdm_files([input_path])
    except _InputError as e:
        return _failure([f"error: {e}"], EXIT_IO)
    if not files:
        return _failure(["error: no .vdmpp files found"], EXIT_TRANSLATION)
    try:
        model, diagnostics = _parse_workspace(files)
    except _InputError as e:
        return _failure([f"error: {e}"], EXIT_IO)
    read = tuple(str(p) for p in files)
    if model is None:
        return _failure(diagnostics, EXIT_TRANSLATION, read)
    diags = validate_model(model)
    if diags:
        return _failure(_diagnostic_lines(diags), EXIT_TRANSLATION, read)
    return RunReport(read, (), (), (f"ok: {len(model.classes)} classes",), EXIT_OK)


# ---------------------------------------------------------------------------
# Argument parsing


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_gamma_flags(parser):
    parser.add_argument("--gamma0", metavar="N", help="capacity for set/seq/optional types (maps get 2N)")
    parser.add_argument("--gamma1", metavar="N", help="capacity for product/union types")
    parser.add_argument("--ordering", choices=("input", "alpha"), help="class output order")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="vdmuml",
        description="Translate between VDM++ class files and PlantUML class diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v2u = sub.add_parser("vdm2uml", help="translate .vdmpp files or folders to one .puml file")
    v2u.add_argument("inputs", nargs="+", help=".vdmpp files or directories")
    v2u.add_argument("-o", "--output", help="output .puml path")
    _add_gamma_flags(v2u)

    u2v = sub.add_parser("uml2vdm", help="translate a .puml file to one .vdmpp per class")
    u2v.add_argument("input", help=".puml file")
    u2v.add_argument("-o", "--output-dir", help="directory for the generated .vdmpp files")

    rt = sub.add_parser("roundtrip", help="translate there and back in memory and compare")
    rt.add_argument("inputs", nargs="+", help=".vdmpp files or directories")
    _add_gamma_flags(rt)

    chk = sub.add_parser("check", help="parse and validate a .vdmpp/.puml file or folder")
    chk.add_argument("input", help=".vdmpp file, .puml file or directory")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = load_config(args, os.environ)
    except UsageError as e:
        print(f"vdmuml: error: {e}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "vdm2uml":
        report = cmd_vdm2uml(args.inputs, args.output, config)
    elif args.command == "uml2vdm":
        report = cmd_uml2vdm(args.input, args.output_dir)
    elif args.command == "roundtrip":
        report = cmd_roundtrip(args.inputs, config)
    else:
        report = cmd_check(args.input)

    for line in report.diagnostics:
        print(line, file=sys.stderr)
    for line in report.summary:
        print(line)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
