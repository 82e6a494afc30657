"""Core data models: a VDM++ class subset and a UML class-diagram model.

Both models are plain immutable trees built from frozen dataclasses, so
equality is structural and instances are safe to share between threads.
Validation never raises; it returns a list of Diagnostic values so a caller
can report every problem in one pass.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

BASIC_TYPE_NAMES = frozenset(
    {"bool", "nat", "nat1", "int", "rat", "real", "char", "token"}
)

_IDENTIFIER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def is_identifier(name: str) -> bool:
    return bool(_IDENTIFIER_RE.match(name))


class Access(Enum):
    """Member visibility. Unspecified access always means PRIVATE."""

    PUBLIC = "public"
    PRIVATE = "private"
    PROTECTED = "protected"


# ---------------------------------------------------------------------------
# VDM types


@dataclass(frozen=True)
class BasicType:
    name: str

    def __post_init__(self):
        if self.name not in BASIC_TYPE_NAMES:
            raise ValueError(f"not a basic type: {self.name!r}")


@dataclass(frozen=True)
class NamedType:
    """Reference to a class or a user-defined type, by name.

    Whether the name denotes a class is only decidable against a whole
    model, so the distinction is resolved by the translator, not here.
    """

    name: str


@dataclass(frozen=True)
class SetType:
    inner: VdmType


@dataclass(frozen=True)
class Set1Type:
    inner: VdmType


@dataclass(frozen=True)
class SeqType:
    inner: VdmType


@dataclass(frozen=True)
class Seq1Type:
    inner: VdmType


@dataclass(frozen=True)
class OptionalType:
    inner: VdmType


@dataclass(frozen=True)
class MapType:
    domain: VdmType
    range: VdmType
    injective: bool = False


@dataclass(frozen=True)
class ProductType:
    members: tuple[VdmType, ...]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError("product type needs at least two members")


@dataclass(frozen=True)
class UnionType:
    members: tuple[VdmType, ...]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError("union type needs at least two members")


VdmType = (
    BasicType
    | NamedType
    | SetType
    | Set1Type
    | SeqType
    | Seq1Type
    | OptionalType
    | MapType
    | ProductType
    | UnionType
)


def type_children(t: VdmType) -> tuple[VdmType, ...]:
    """Immediate sub-types of a type node (empty for leaves)."""
    if isinstance(t, (SetType, Set1Type, SeqType, Seq1Type, OptionalType)):
        return (t.inner,)
    if isinstance(t, MapType):
        return (t.domain, t.range)
    if isinstance(t, (ProductType, UnionType)):
        return t.members
    return ()


# ---------------------------------------------------------------------------
# VDM members and classes


@dataclass(frozen=True)
class InstanceVariable:
    access: Access
    is_static: bool
    name: str
    var_type: VdmType
    init_text: str | None = None


@dataclass(frozen=True)
class ValueDef:
    """A named constant. Values never carry a static flag."""

    access: Access
    name: str
    val_type: VdmType
    expr_text: str


@dataclass(frozen=True)
class TypeDef:
    access: Access
    name: str
    definition: VdmType


@dataclass(frozen=True)
class OperationDef:
    access: Access
    is_static: bool
    name: str
    param_types: tuple[VdmType, ...]
    return_type: VdmType
    body_text: str | None = None


@dataclass(frozen=True)
class FunctionDef:
    access: Access
    is_static: bool
    name: str
    param_types: tuple[VdmType, ...]
    return_type: VdmType
    body_text: str | None = None


VdmMember = InstanceVariable | ValueDef | TypeDef | OperationDef | FunctionDef


@dataclass(frozen=True)
class VdmClass:
    name: str
    superclasses: tuple[str, ...] = ()
    instance_variables: tuple[InstanceVariable, ...] = ()
    values: tuple[ValueDef, ...] = ()
    type_defs: tuple[TypeDef, ...] = ()
    operations: tuple[OperationDef, ...] = ()
    functions: tuple[FunctionDef, ...] = ()

    def members(self) -> tuple[VdmMember, ...]:
        """Every member, in declaration-list order."""
        return (
            self.values
            + self.type_defs
            + self.instance_variables
            + self.operations
            + self.functions
        )


@dataclass(frozen=True)
class VdmModel:
    classes: tuple[VdmClass, ...] = ()

    def class_names(self) -> frozenset[str]:
        return frozenset(c.name for c in self.classes)


# ---------------------------------------------------------------------------
# UML model


class AttributeStereotype(Enum):
    """Marks what kind of class member an attribute stands for.

    INSTANCE_VARIABLE is the unmarked default in concrete syntax.
    """

    INSTANCE_VARIABLE = "instance variable"
    VALUE = "value"
    TYPE = "type"


class OperationStereotype(Enum):
    OPERATION = "operation"
    FUNCTION = "function"


class Multiplicity(Enum):
    """Association-end multiplicity; SEQ0/SEQ1 are the ordered variants."""

    ONE = "one"
    OPT = "optional"
    SET0 = "zero-to-many"
    SET1 = "one-to-many"
    SEQ0 = "zero-to-many ordered"
    SEQ1 = "one-to-many ordered"


@dataclass(frozen=True)
class Qualifier:
    """Key type of a qualified association; unique means an injective map."""

    type_text: str
    unique: bool = False


@dataclass(frozen=True)
class UmlAttribute:
    visibility: Access
    is_static: bool
    name: str
    type_text: str
    stereotype: AttributeStereotype = AttributeStereotype.INSTANCE_VARIABLE


@dataclass(frozen=True)
class UmlOperation:
    visibility: Access
    is_static: bool
    name: str
    param_type_texts: tuple[str, ...]
    return_type_text: str
    stereotype: OperationStereotype = OperationStereotype.OPERATION


@dataclass(frozen=True)
class UmlClass:
    name: str
    attributes: tuple[UmlAttribute, ...] = ()
    operations: tuple[UmlOperation, ...] = ()


@dataclass(frozen=True)
class UmlGeneralization:
    child: str
    parent: str


@dataclass(frozen=True)
class UmlAssociation:
    """Directed link between classes. The role name is mandatory."""

    source: str
    target: str
    role_name: str
    role_visibility: Access = Access.PRIVATE
    multiplicity: Multiplicity = Multiplicity.ONE
    qualifier: Qualifier | None = None


@dataclass(frozen=True)
class UmlModel:
    classes: tuple[UmlClass, ...] = ()
    generalizations: tuple[UmlGeneralization, ...] = ()
    associations: tuple[UmlAssociation, ...] = ()

    def class_names(self) -> frozenset[str]:
        return frozenset(c.name for c in self.classes)


# ---------------------------------------------------------------------------
# Configuration


class Ordering(Enum):
    INPUT = "input"
    ALPHABETICAL = "alpha"


@dataclass(frozen=True)
class Config:
    """Translation parameters.

    gamma0 caps the complexity of collection-like compound types (set,
    seq, optional; maps get twice the allowance), gamma1 caps products
    and unions. Type rendering falls back to an elided form once a
    type's complexity exceeds its cap.
    """

    gamma0: int = 2
    gamma1: int = 1
    ordering: Ordering = Ordering.INPUT

    def __post_init__(self):
        if self.gamma0 < 0 or self.gamma1 < 0:
            raise ValueError("capacities must be non-negative")


# ---------------------------------------------------------------------------
# Validation


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str
    subject: str  # offending class or "Class.member"

    def __str__(self) -> str:
        return f"{self.severity}: {self.subject}: {self.message}"


def _error(message: str, subject: str) -> Diagnostic:
    return Diagnostic("error", message, subject)


def _inheritance_cycles(edges: dict[str, tuple[str, ...]]) -> list[str]:
    """Names of nodes that can reach themselves via parent edges."""
    cyclic = []
    for start in edges:
        seen = set()
        frontier = [p for p in edges[start] if p in edges]
        while frontier:
            node = frontier.pop()
            if node == start:
                cyclic.append(start)
                frontier = []
            elif node not in seen:
                seen.add(node)
                frontier.extend(p for p in edges.get(node, ()) if p in edges)
    return cyclic


def validate_model(model: VdmModel) -> list[Diagnostic]:
    """Check every VDM model invariant; empty result means well-formed."""
    diags: list[Diagnostic] = []
    seen: set[str] = set()
    for cls in model.classes:
        if not is_identifier(cls.name):
            diags.append(_error(f"class name {cls.name!r} is not a valid identifier", cls.name))
        if cls.name in seen:
            diags.append(_error(f"duplicate class name '{cls.name}'", cls.name))
        seen.add(cls.name)

    names = model.class_names()
    for cls in model.classes:
        member_names: set[str] = set()
        for member in cls.members():
            subject = f"{cls.name}.{member.name}"
            if not is_identifier(member.name):
                diags.append(_error(f"member name {member.name!r} is not a valid identifier", subject))
            if member.name in member_names:
                diags.append(_error(f"duplicate member name '{member.name}'", subject))
            member_names.add(member.name)
        listed: set[str] = set()
        for sup in cls.superclasses:
            if sup in listed:
                diags.append(_error(f"superclass '{sup}' listed twice", cls.name))
            listed.add(sup)
            if sup not in names:
                diags.append(_error(f"superclass '{sup}' does not name a class in the model", cls.name))

    edges = {c.name: c.superclasses for c in model.classes}
    for name in _inheritance_cycles(edges):
        diags.append(_error(f"class '{name}' inherits from itself (inheritance cycle)", name))
    return diags


def validate_uml(model: UmlModel) -> list[Diagnostic]:
    """Check every UML model invariant; empty result means well-formed."""
    diags: list[Diagnostic] = []
    seen: set[str] = set()
    for cls in model.classes:
        if not is_identifier(cls.name):
            diags.append(_error(f"class name {cls.name!r} is not a valid identifier", cls.name))
        if cls.name in seen:
            diags.append(_error(f"duplicate class name '{cls.name}'", cls.name))
        seen.add(cls.name)

    names = model.class_names()
    roles_by_source: dict[str, list[str]] = {}
    for assoc in model.associations:
        roles_by_source.setdefault(assoc.source, []).append(assoc.role_name)

    for cls in model.classes:
        member_names: set[str] = set()
        for attr in cls.attributes:
            subject = f"{cls.name}.{attr.name}"
            if not is_identifier(attr.name):
                diags.append(_error(f"attribute name {attr.name!r} is not a valid identifier", subject))
            if attr.name in member_names:
                diags.append(_error(f"duplicate member name '{attr.name}'", subject))
            member_names.add(attr.name)
            if attr.is_static and attr.stereotype is AttributeStereotype.VALUE:
                diags.append(_error("a value attribute cannot be static", subject))
            if attr.is_static and attr.stereotype is AttributeStereotype.TYPE:
                diags.append(_error("a type attribute cannot be static", subject))
        for op in cls.operations:
            subject = f"{cls.name}.{op.name}"
            if not is_identifier(op.name):
                diags.append(_error(f"operation name {op.name!r} is not a valid identifier", subject))
            if op.name in member_names:
                diags.append(_error(f"duplicate member name '{op.name}'", subject))
            member_names.add(op.name)
        for role in roles_by_source.get(cls.name, ()):
            subject = f"{cls.name}.{role}"
            if role in member_names:
                diags.append(_error(f"role name '{role}' collides with another member", subject))
            member_names.add(role)

    listed_gens: set[tuple[str, str]] = set()
    for gen in model.generalizations:
        subject = f"{gen.child} -> {gen.parent}"
        for end in (gen.child, gen.parent):
            if end not in names:
                diags.append(_error(f"generalization names unknown class '{end}'", subject))
        if gen.child == gen.parent:
            diags.append(_error(f"class '{gen.child}' cannot inherit from itself", subject))
        if (gen.child, gen.parent) in listed_gens:
            diags.append(_error("duplicate generalization", subject))
        listed_gens.add((gen.child, gen.parent))

    edges: dict[str, tuple[str, ...]] = {c.name: () for c in model.classes}
    for gen in model.generalizations:
        if gen.child in edges and gen.parent in edges:
            edges[gen.child] = edges[gen.child] + (gen.parent,)
    for name in _inheritance_cycles(edges):
        if not any(g.child == name and g.parent == name for g in model.generalizations):
            diags.append(_error(f"class '{name}' is part of a generalization cycle", name))

    for assoc in model.associations:
        subject = f"{assoc.source}.{assoc.role_name or '<missing role>'}"
        for end in (assoc.source, assoc.target):
            if end not in names:
                diags.append(_error(f"association names unknown class '{end}'", subject))
        if not assoc.role_name:
            diags.append(_error("association requires a role name", subject))
        elif not is_identifier(assoc.role_name):
            diags.append(_error(f"role name {assoc.role_name!r} is not a valid identifier", subject))
        if assoc.qualifier is not None and not assoc.qualifier.type_text.strip():
            diags.append(_error("qualifier type must not be empty", subject))
    return diags
