"""Parser and printer for the VDM++ class subset.

parse_vdm turns source text into a VdmModel and collects every syntax
error it can recover from; print_vdm renders a model back to canonical
source, one text unit per class. Operation and function bodies, value
expressions and instance-variable initialisers are kept as raw text,
captured by bracket-balanced scanning: none of the translation rules
ever look inside them.
"""

from __future__ import annotations

import re
from bisect import bisect_right

from .errors import ParseError, ParseFailure, SourceSpan
from .model import (
    Access,
    BASIC_TYPE_NAMES,
    BasicType,
    FunctionDef,
    InstanceVariable,
    MapType,
    NamedType,
    OperationDef,
    OptionalType,
    ProductType,
    Seq1Type,
    SeqType,
    Set1Type,
    SetType,
    TypeDef,
    UnionType,
    ValueDef,
    VdmClass,
    VdmModel,
    VdmType,
)

_WORD_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")
_CHAR_LITERAL_RE = re.compile(r"'(\\.|[^'\\])'")

# Longest first so '==' never shadows '==>' and '=' never shadows '=='.
_SYMBOLS = ("==>", ":=", "==", "->", "=", ":", ";", ",", "(", ")", "[", "]", "*", "|")

_BLOCK_KEYWORDS = ("values", "types", "instance", "operations", "functions")
_UNSUPPORTED_BLOCKS = ("thread", "sync", "traces")
_BOUNDARY_WORDS = frozenset(_BLOCK_KEYWORDS) | frozenset(_UNSUPPORTED_BLOCKS) | {"end", "class"}

_ACCESS_WORDS = {
    "public": Access.PUBLIC,
    "private": Access.PRIVATE,
    "protected": Access.PROTECTED,
}

KEYWORDS = (
    _BOUNDARY_WORDS
    | set(_ACCESS_WORDS)
    | BASIC_TYPE_NAMES
    | {"variables", "is", "subclass", "of", "static", "set", "set1", "seq",
       "seq1", "map", "inmap", "to", "inv", "pre", "post"}
)


class _Scanner:
    """Cursor over source text with trivia skipping and raw capture."""

    def __init__(self, text: str, origin: str):
        self.text = text
        self.origin = origin
        self.pos = 0
        self.comment_error: ParseError | None = None
        self._line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    # -- positions ---------------------------------------------------------

    def span(self, pos: int | None = None) -> SourceSpan:
        p = self.pos if pos is None else pos
        line = bisect_right(self._line_starts, p)
        col = p - self._line_starts[line - 1] + 1
        return SourceSpan(self.origin, line, col)

    def error(self, message: str, pos: int | None = None, expected: str | None = None) -> ParseError:
        return ParseError(self.span(pos), message, expected)

    # -- trivia ------------------------------------------------------------

    def skip_trivia(self):
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif text.startswith("--", self.pos):
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl < 0 else nl
            elif text.startswith("/*", self.pos):
                close = text.find("*/", self.pos + 2)
                if close < 0:
                    # remember the first unterminated comment, consume the
                    # rest so recovery loops always terminate
                    if self.comment_error is None:
                        self.comment_error = self.error("unterminated comment")
                    self.pos = len(text)
                    return
                self.pos = close + 2
            else:
                return

    def at_end(self) -> bool:
        self.skip_trivia()
        return self.pos >= len(self.text)

    # -- words and symbols ---------------------------------------------------

    def peek_word(self) -> str | None:
        self.skip_trivia()
        m = _WORD_RE.match(self.text, self.pos)
        return m.group() if m else None

    def take_word(self) -> str:
        self.skip_trivia()
        m = _WORD_RE.match(self.text, self.pos)
        if not m:
            raise self.error("expected a word")
        self.pos = m.end()
        return m.group()

    def try_word(self, word: str) -> bool:
        if self.peek_word() == word:
            self.take_word()
            return True
        return False

    def expect_word(self, word: str):
        if not self.try_word(word):
            raise self.error(f"expected '{word}'", expected=f"'{word}'")

    def peek_symbol(self) -> str | None:
        self.skip_trivia()
        for sym in _SYMBOLS:
            if self.text.startswith(sym, self.pos):
                return sym
        return None

    def try_symbol(self, sym: str) -> bool:
        if self.peek_symbol() == sym:
            self.pos += len(sym)
            return True
        return False

    def expect_symbol(self, sym: str):
        if not self.try_symbol(sym):
            raise self.error(f"expected '{sym}'", expected=f"'{sym}'")

    def expect_identifier(self, what: str) -> str:
        self.skip_trivia()
        start = self.pos
        m = _WORD_RE.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        word = m.group()
        if word in KEYWORDS:
            raise self.error(f"expected {what}, found keyword '{word}'", pos=start)
        self.pos = m.end()
        return word

    # -- raw capture ---------------------------------------------------------

    def scan_raw(self) -> str:
        """Capture text until a top-level ';' (consumed) or block boundary.

        Bracket depth, comments, string and character literals are tracked
        so that separators inside them never terminate the capture.
        """
        self.skip_trivia()
        text = self.text
        start = self.pos
        depth = 0
        while self.pos < len(text):
            ch = text[self.pos]
            if text.startswith("--", self.pos):
                nl = text.find("\n", self.pos)
                self.pos = len(text) if nl < 0 else nl
            elif text.startswith("/*", self.pos):
                close = text.find("*/", self.pos + 2)
                self.pos = len(text) if close < 0 else close + 2
            elif ch == '"':
                self.pos += 1
                while self.pos < len(text) and text[self.pos] != '"':
                    self.pos += 2 if text[self.pos] == "\\" else 1
                self.pos += 1
            elif ch == "'" and (self.pos == 0 or not _is_word_char(text[self.pos - 1])):
                m = _CHAR_LITERAL_RE.match(text, self.pos)
                self.pos = m.end() if m else self.pos + 1
            elif ch in "([{":
                depth += 1
                self.pos += 1
            elif ch in ")]}":
                if depth == 0:
                    break  # stray closer: leave it for the caller to report
                depth -= 1
                self.pos += 1
            elif ch == ";" and depth == 0:
                raw = text[start:self.pos].strip()
                self.pos += 1
                return raw
            elif _is_word_start(ch) and (self.pos == 0 or not _is_word_char(text[self.pos - 1])):
                m = _WORD_RE.match(text, self.pos)
                if depth == 0 and m.group() in _BOUNDARY_WORDS:
                    break
                self.pos = m.end()
            else:
                self.pos += 1
        return text[start:self.pos].strip()

    def recover(self):
        """Skip past the current definition after an error."""
        before = self.pos
        self.scan_raw()
        if self.pos == before and self.pos < len(self.text):
            self.pos += 1


def _is_word_start(ch: str) -> bool:
    return ch.isalpha() or ch == "_"


def _is_word_char(ch: str) -> bool:
    return ch.isalnum() or ch in "_'"


# ---------------------------------------------------------------------------
# Type expressions


def parse_vdm_type(text: str, origin: str = "<type>") -> VdmType:
    """Parse one type expression; raises ParseError on malformed input."""
    sc = _Scanner(text, origin)
    t = _parse_type(sc)
    if not sc.at_end():
        raise sc.error("unexpected text after type")
    if sc.comment_error is not None:
        raise sc.comment_error
    return t


def _parse_type(sc: _Scanner) -> VdmType:
    members = [_parse_product(sc)]
    while sc.try_symbol("|"):
        members.append(_parse_product(sc))
    return UnionType(tuple(members)) if len(members) > 1 else members[0]


def _parse_product(sc: _Scanner) -> VdmType:
    members = [_parse_prefix(sc)]
    while sc.try_symbol("*"):
        members.append(_parse_prefix(sc))
    return ProductType(tuple(members)) if len(members) > 1 else members[0]


_PREFIX_CONSTRUCTORS = {"set": SetType, "set1": Set1Type, "seq": SeqType, "seq1": Seq1Type}


def _parse_prefix(sc: _Scanner) -> VdmType:
    word = sc.peek_word()
    if word in _PREFIX_CONSTRUCTORS:
        sc.take_word()
        sc.expect_word("of")
        return _PREFIX_CONSTRUCTORS[word](_parse_prefix(sc))
    if word in ("map", "inmap"):
        sc.take_word()
        domain = _parse_type(sc)
        sc.expect_word("to")
        rng = _parse_type(sc)
        return MapType(domain, rng, injective=word == "inmap")
    return _parse_atom(sc)


def _parse_atom(sc: _Scanner) -> VdmType:
    if sc.try_symbol("("):
        inner = _parse_type(sc)
        sc.expect_symbol(")")
        return inner
    if sc.try_symbol("["):
        inner = _parse_type(sc)
        sc.expect_symbol("]")
        return OptionalType(inner)
    sc.skip_trivia()
    start = sc.pos
    word = sc.peek_word()
    if word is None:
        raise sc.error("expected a type")
    sc.take_word()
    if word in BASIC_TYPE_NAMES:
        return BasicType(word)
    if word in KEYWORDS:
        raise sc.error(f"unexpected keyword '{word}' in type", pos=start)
    return NamedType(word)


# ---------------------------------------------------------------------------
# Type rendering

_PREFIX_KEYWORD = {SetType: "set of", Set1Type: "set1 of", SeqType: "seq of", Seq1Type: "seq1 of"}


def render_type(t: VdmType) -> str:
    """Concrete VDM syntax for a type, with minimal grouping parentheses."""
    if isinstance(t, (BasicType, NamedType)):
        return t.name
    if isinstance(t, (SetType, Set1Type, SeqType, Seq1Type)):
        return f"{_PREFIX_KEYWORD[type(t)]} {_render_child(t.inner, (ProductType, UnionType, MapType))}"
    if isinstance(t, OptionalType):
        return f"[{render_type(t.inner)}]"
    if isinstance(t, MapType):
        keyword = "inmap" if t.injective else "map"
        domain = _render_child(t.domain, (MapType,))
        return f"{keyword} {domain} to {render_type(t.range)}"
    if isinstance(t, ProductType):
        return " * ".join(_render_child(m, (ProductType, UnionType, MapType)) for m in t.members)
    if isinstance(t, UnionType):
        return " | ".join(_render_child(m, (UnionType, MapType)) for m in t.members)
    raise TypeError(f"not a VDM type: {t!r}")


def _render_child(t: VdmType, parenthesize: tuple[type, ...]) -> str:
    text = render_type(t)
    return f"({text})" if isinstance(t, parenthesize) else text


def render_param_types(params: tuple[VdmType, ...]) -> str:
    """Signature domain: '()' when empty, '*'-separated types otherwise."""
    if not params:
        return "()"
    return " * ".join(_render_child(p, (ProductType, UnionType, MapType)) for p in params)


# ---------------------------------------------------------------------------
# Class parsing


def parse_vdm(source: str, origin: str = "<input>") -> VdmModel:
    """Parse every 'class ... end' block in source into a VdmModel.

    Raises ParseFailure carrying all ParseErrors when anything is
    malformed; parsing resumes at the next definition block so several
    errors are reported in one pass.
    """
    sc = _Scanner(source, origin)
    errors: list[ParseError] = []
    classes: list[VdmClass] = []
    while not sc.at_end():
        word = sc.peek_word()
        if word != "class":
            errors.append(sc.error("expected 'class'", expected="'class'"))
            _skip_to_next_class(sc)
            continue
        cls = _parse_class(sc, errors)
        if cls is not None:
            classes.append(cls)
    if sc.comment_error is not None:
        errors.append(sc.comment_error)
    if errors:
        raise ParseFailure(errors)
    return VdmModel(tuple(classes))


def _skip_to_next_class(sc: _Scanner):
    while not sc.at_end():
        if sc.peek_word() == "class":
            return
        before = sc.pos
        sc.recover()
        if sc.pos == before:
            sc.pos += 1


def _parse_class(sc: _Scanner, errors: list[ParseError]) -> VdmClass | None:
    sc.expect_word("class")
    try:
        name = sc.expect_identifier("a class name")
    except ParseError as e:
        errors.append(e)
        _skip_to_next_class(sc)
        return None
    superclasses: list[str] = []
    try:
        if sc.try_word("is"):
            sc.expect_word("subclass")
            sc.expect_word("of")
            superclasses.append(sc.expect_identifier("a superclass name"))
            while sc.try_symbol(","):
                superclasses.append(sc.expect_identifier("a superclass name"))
    except ParseError as e:
        errors.append(e)
        sc.recover()

    ivars: list[InstanceVariable] = []
    values: list[ValueDef] = []
    type_defs: list[TypeDef] = []
    operations: list[OperationDef] = []
    functions: list[FunctionDef] = []
    while True:
        word = sc.peek_word()
        if word == "end":
            sc.take_word()
            end_name = sc.peek_word()
            if end_name is None or end_name in KEYWORDS:
                errors.append(sc.error(f"expected 'end {name}'"))
            else:
                sc.take_word()
                if end_name != name:
                    errors.append(sc.error(f"'end {end_name}' does not match class '{name}'"))
            break
        if word == "instance":
            sc.take_word()
            try:
                sc.expect_word("variables")
            except ParseError as e:
                errors.append(e)
            _parse_block(sc, errors, _parse_instance_variable, ivars)
        elif word == "values":
            sc.take_word()
            _parse_block(sc, errors, _parse_value, values)
        elif word == "types":
            sc.take_word()
            _parse_block(sc, errors, _parse_type_def, type_defs)
        elif word == "operations":
            sc.take_word()
            _parse_block(sc, errors, _parse_operation, operations)
        elif word == "functions":
            sc.take_word()
            _parse_block(sc, errors, _parse_function, functions)
        elif word in _UNSUPPORTED_BLOCKS:
            errors.append(sc.error(f"unsupported construct '{word}'"))
            sc.take_word()
            _skip_unsupported_block(sc)
        elif word == "class" or sc.at_end():
            errors.append(sc.error(f"missing 'end {name}'"))
            break
        else:
            errors.append(sc.error("expected a definition block keyword or 'end'"))
            before = sc.pos
            sc.recover()
            if sc.pos == before:
                break
    return VdmClass(
        name,
        tuple(superclasses),
        tuple(ivars),
        tuple(values),
        tuple(type_defs),
        tuple(operations),
        tuple(functions),
    )


def _skip_unsupported_block(sc: _Scanner):
    while not sc.at_end() and sc.peek_word() not in _BOUNDARY_WORDS:
        before = sc.pos
        sc.recover()
        if sc.pos == before:
            sc.pos += 1


def _parse_block(sc, errors, parse_member, out: list):
    while True:
        word = sc.peek_word()
        if word in _BOUNDARY_WORDS or sc.at_end():
            return
        before = sc.pos
        try:
            out.append(parse_member(sc))
        except ParseError as e:
            errors.append(e)
            sc.recover()
            if sc.pos == before:
                sc.pos += 1


def _parse_access_prefix(sc: _Scanner, allow_static: bool) -> tuple[Access, bool]:
    access: Access | None = None
    static = False
    while True:
        word = sc.peek_word()
        if word in _ACCESS_WORDS:
            if access is not None:
                raise sc.error("duplicate access modifier")
            access = _ACCESS_WORDS[sc.take_word()]
        elif word == "static":
            if not allow_static:
                raise sc.error("'static' is not allowed here")
            if static:
                raise sc.error("duplicate 'static'")
            sc.take_word()
            static = True
        else:
            return access if access is not None else Access.PRIVATE, static


def _parse_instance_variable(sc: _Scanner) -> InstanceVariable:
    if sc.peek_word() == "inv":
        raise sc.error("unsupported construct 'inv'")
    access, static = _parse_access_prefix(sc, allow_static=True)
    name = sc.expect_identifier("an instance variable name")
    sc.expect_symbol(":")
    var_type = _parse_type(sc)
    init_text: str | None = None
    if sc.try_symbol(":="):
        init_text = sc.scan_raw()
        if not init_text:
            raise sc.error("missing initialiser expression after ':='")
    else:
        sc.try_symbol(";")
    return InstanceVariable(access, static, name, var_type, init_text)


def _parse_value(sc: _Scanner) -> ValueDef:
    access, _ = _parse_access_prefix(sc, allow_static=False)
    name = sc.expect_identifier("a value name")
    sc.expect_symbol(":")
    val_type = _parse_type(sc)
    sc.expect_symbol("=")
    expr = sc.scan_raw()
    if not expr:
        raise sc.error("missing value expression after '='")
    return ValueDef(access, name, val_type, expr)


def _parse_type_def(sc: _Scanner) -> TypeDef:
    access, _ = _parse_access_prefix(sc, allow_static=False)
    name = sc.expect_identifier("a type name")
    sc.expect_symbol("=")
    definition = _parse_type(sc)
    if sc.peek_word() == "inv":
        raise sc.error("unsupported construct 'inv'")
    sc.try_symbol(";")
    return TypeDef(access, name, definition)


def _parse_operation(sc: _Scanner) -> OperationDef:
    access, static, name, params, ret, body = _parse_callable(sc, ("==>",))
    return OperationDef(access, static, name, params, ret, body)


def _parse_function(sc: _Scanner) -> FunctionDef:
    # The definition block already decides the member kind, so the total
    # arrow '->' is canonical but '==>' is tolerated on function signatures.
    access, static, name, params, ret, body = _parse_callable(sc, ("->", "==>"))
    return FunctionDef(access, static, name, params, ret, body)


def _parse_callable(sc: _Scanner, arrows: tuple[str, ...]):
    access, static = _parse_access_prefix(sc, allow_static=True)
    name = sc.expect_identifier("a definition name")
    sc.expect_symbol(":")
    domain = _parse_signature_domain(sc)
    if not any(sc.try_symbol(a) for a in arrows):
        raise sc.error(f"expected '{arrows[0]}'", expected=f"'{arrows[0]}'")
    if sc.peek_symbol() == "(":
        save = sc.pos
        sc.try_symbol("(")
        if sc.try_symbol(")"):
            raise sc.error("void return types are not supported", pos=save)
        sc.pos = save
    ret = _parse_type(sc)

    def_pos = sc.pos
    def_name = sc.peek_word()
    if def_name is None or def_name in KEYWORDS:
        raise sc.error(f"expected the definition of '{name}'", pos=def_pos)
    sc.take_word()
    if def_name != name:
        raise sc.error(f"definition name '{def_name}' does not match '{name}'", pos=def_pos)
    sc.expect_symbol("(")
    patterns: list[str] = []
    if not sc.try_symbol(")"):
        patterns.append(sc.expect_identifier("a parameter name"))
        while sc.try_symbol(","):
            patterns.append(sc.expect_identifier("a parameter name"))
        sc.expect_symbol(")")
    sc.expect_symbol("==")
    body = sc.scan_raw()
    if not body:
        raise sc.error(f"missing body for '{name}'")
    params = _match_params(sc, domain, len(patterns), def_pos)
    if body == SKELETON_BODY:
        body = None  # the canonical placeholder stands for "no body"
    return access, static, name, params, ret, body


def _parse_signature_domain(sc: _Scanner) -> VdmType | None:
    """Domain of a signature; None stands for the empty '()' domain."""
    if sc.peek_symbol() == "(":
        save = sc.pos
        sc.try_symbol("(")
        if sc.try_symbol(")"):
            return None
        sc.pos = save
    return _parse_type(sc)


def _match_params(sc, domain: VdmType | None, n_patterns: int, pos: int) -> tuple[VdmType, ...]:
    """Split the signature domain into one type per definition pattern.

    A top-level product lists one type per parameter; when the pattern
    list has a single name the whole domain is that parameter's type.
    """
    if domain is None:
        if n_patterns != 0:
            raise sc.error("signature has no parameter types but the definition lists parameters", pos=pos)
        return ()
    flat = domain.members if isinstance(domain, ProductType) else (domain,)
    if n_patterns == len(flat):
        return tuple(flat)
    if n_patterns == 1:
        return (domain,)
    raise sc.error(
        f"signature lists {len(flat)} parameter type(s) but the definition has {n_patterns}",
        pos=pos,
    )


# ---------------------------------------------------------------------------
# Printing

SKELETON_BODY = "is not yet specified"
SKELETON_EXPR = "undefined"


def _terminate(raw: str) -> str:
    """Append ';' to a raw text, on its own line when a comment is open.

    A raw body may legitimately end inside a '--' comment; putting the
    terminator on the same line would bury it in that comment.
    """
    i, n = 0, len(raw)
    while i < n:
        if raw.startswith("--", i):
            nl = raw.find("\n", i)
            if nl < 0:
                return raw + "\n;"
            i = nl + 1
        elif raw[i] == '"':
            i += 1
            while i < n and raw[i] != '"':
                i += 2 if raw[i] == "\\" else 1
            i += 1
        elif raw.startswith("/*", i):
            close = raw.find("*/", i + 2)
            i = n if close < 0 else close + 2
        else:
            i += 1
    return raw + ";"


def print_vdm(model: VdmModel) -> list[tuple[str, str]]:
    """Render each class to canonical source; returns (name, text) pairs.

    Blocks are emitted in the fixed order values, types, instance
    variables, operations, functions, empty blocks omitted. Members with
    no recorded body or expression get parseable skeletons. The output
    is deterministic down to the byte.
    """
    return [(cls.name, _print_class(cls)) for cls in model.classes]


def _print_class(cls: VdmClass) -> str:
    header = f"class {cls.name}"
    if cls.superclasses:
        header += " is subclass of " + ", ".join(cls.superclasses)
    lines = [header]
    if cls.values:
        lines.append("values")
        for v in cls.values:
            expr = v.expr_text.strip() if v.expr_text.strip() else SKELETON_EXPR
            lines.append(_terminate(f"{v.access.value} {v.name} : {render_type(v.val_type)} = {expr}"))
    if cls.type_defs:
        lines.append("types")
        for td in cls.type_defs:
            lines.append(f"{td.access.value} {td.name} = {render_type(td.definition)};")
    if cls.instance_variables:
        lines.append("instance variables")
        for iv in cls.instance_variables:
            static = "static " if iv.is_static else ""
            line = f"{iv.access.value} {static}{iv.name} : {render_type(iv.var_type)}"
            if iv.init_text:
                line += f" := {iv.init_text.strip()}"
            lines.append(_terminate(line))
    if cls.operations:
        lines.append("operations")
        for op in cls.operations:
            lines.extend(_print_callable(op, "==>"))
    if cls.functions:
        lines.append("functions")
        for fn in cls.functions:
            lines.extend(_print_callable(fn, "->"))
    lines.append(f"end {cls.name}")
    return "\n".join(lines) + "\n"


def _print_callable(member: OperationDef | FunctionDef, arrow: str) -> list[str]:
    static = "static " if member.is_static else ""
    signature = (
        f"{member.access.value} {static}{member.name} : "
        f"{render_param_types(member.param_types)} {arrow} {render_type(member.return_type)}"
    )
    placeholders = ", ".join(f"p{i + 1}" for i in range(len(member.param_types)))
    body = member.body_text.strip() if member.body_text and member.body_text.strip() else SKELETON_BODY
    return [signature, _terminate(f"{member.name}({placeholders}) == {body}")]
