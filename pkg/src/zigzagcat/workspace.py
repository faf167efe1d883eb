"""Workspaces: persistence, proof scripts, history, and undo.

A workspace bundles a label signature, a named collection of diagrams, and
an append-only log of the state-changing commands that produced them.  The
serialized form is canonical JSON (sorted keys, no insignificant
whitespace) so that the content hash is well defined; every log entry
carries the full before-state, which is what makes undo a pure lookup.
"""

from __future__ import annotations

import hashlib
import json
import shlex
from dataclasses import dataclass, field, replace
from pathlib import Path

from .catcore import Label, LabelSignature, PosetMor
from .diagram import (
    Diagram,
    REGULAR,
    SINGULAR,
    base_for,
    slice_diagram,
    validate_dimensions,
)
from .errors import (
    AssertionFailed,
    EngineError,
    NothingToUndo,
    ParseError,
    ReplayFailed,
    ValidationFailed,
    VersionUnsupported,
)
from .homotopy import ContractionDirective, ExpansionDirective, contract_at, expand_at
from .monotone import Bias, Monotone
from .render import emit_svg, emit_text, project
from .zigzag import Zigzag, ZigzagMap, concatenate, validate_zigzag
from .diagram import identity_suspend, cone_generator

FORMAT_VERSION = 1
HASH_ALGORITHM = "sha256"


@dataclass(frozen=True)
class LogEntry:
    command: str
    before_hash: str
    after_hash: str
    before_state: dict  # serialized {signature, diagrams} snapshot


@dataclass(frozen=True)
class Workspace:
    signature: LabelSignature = LabelSignature()
    diagrams: dict = field(default_factory=dict)
    log: tuple = ()


# ---------------------------------------------------------------------------
# serialization


def encode_payload(payload, dimension: int):
    if dimension == 0:
        return payload
    doc = {
        "regulars": [encode_payload(r, dimension - 1) for r in payload.regulars],
        "singulars": [encode_payload(s, dimension - 1) for s in payload.singulars],
    }
    if dimension >= 2:
        doc["forwards"] = [encode_map(m, dimension - 1) for m in payload.forwards]
        doc["backwards"] = [encode_map(m, dimension - 1) for m in payload.backwards]
    return doc


def encode_map(m, dimension: int):
    """A map between payloads of the given dimension; poset morphisms at
    dimension 0 are omitted since they carry no data."""
    doc = {"monotone": list(m.sing_map.values)}
    if dimension >= 2:
        doc["slices"] = [encode_map(g, dimension - 1) for g in m.slices]
    return doc


def decode_payload(doc, dimension: int):
    if dimension == 0:
        if not isinstance(doc, str):
            raise ParseError("dimension-0 payload must be a label id")
        return doc
    try:
        regulars = tuple(
            decode_payload(r, dimension - 1) for r in doc["regulars"]
        )
        singulars = tuple(
            decode_payload(s, dimension - 1) for s in doc["singulars"]
        )
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed payload: {e}")
    if dimension == 1:
        forwards = tuple(
            PosetMor(regulars[i], singulars[i]) for i in range(len(singulars))
        )
        backwards = tuple(
            PosetMor(regulars[i + 1], singulars[i]) for i in range(len(singulars))
        )
    else:
        forwards = tuple(
            decode_map(regulars[i], singulars[i], m, dimension - 1)
            for i, m in enumerate(doc.get("forwards", ()))
        )
        backwards = tuple(
            decode_map(regulars[i + 1], singulars[i], m, dimension - 1)
            for i, m in enumerate(doc.get("backwards", ()))
        )
    try:
        return Zigzag(regulars, singulars, forwards, backwards)
    except ValueError as e:
        raise ParseError(str(e))


def decode_map(source, target, doc, dimension: int):
    try:
        values = tuple(doc["monotone"])
        sing = Monotone(source.length, target.length, values)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed map: {e}")
    if dimension == 1:
        slices = tuple(
            PosetMor(source.singulars[i], target.singulars[sing(i)])
            for i in range(source.length)
        )
    else:
        slice_docs = doc.get("slices", ())
        if len(slice_docs) != source.length:
            raise ParseError("slice count disagrees with source length")
        slices = tuple(
            decode_map(
                source.singulars[i],
                target.singulars[sing(i)],
                slice_docs[i],
                dimension - 1,
            )
            for i in range(source.length)
        )
    try:
        return ZigzagMap(source, target, sing, slices)
    except EngineError as e:
        raise ParseError(str(e))


def encode_diagram(d: Diagram) -> dict:
    return {"dimension": d.dimension, "payload": encode_payload(d.payload, d.dimension)}


def decode_diagram(doc) -> Diagram:
    try:
        dimension = doc["dimension"]
    except (KeyError, TypeError):
        raise ParseError("diagram document needs a dimension")
    if not isinstance(dimension, int) or dimension < 0:
        raise ParseError("diagram dimension must be a non-negative integer")
    return Diagram(dimension, decode_payload(doc["payload"], dimension))


def encode_signature(signature: LabelSignature) -> list:
    return [
        {"id": l.id, "dimension": l.dimension, "name": l.name, "color": l.color}
        for l in signature.labels
    ]


def decode_signature(doc) -> LabelSignature:
    try:
        labels = tuple(
            Label(l["id"], l["dimension"], l.get("name", ""), l.get("color", ""))
            for l in doc
        )
        return LabelSignature(labels)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed signature: {e}")


def state_document(w: Workspace) -> dict:
    return {
        "signature": encode_signature(w.signature),
        "diagrams": {
            name: encode_diagram(d) for name, d in sorted(w.diagrams.items())
        },
    }


def canonical_bytes(doc) -> bytes:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode("utf-8")


def state_hash(w: Workspace) -> str:
    return hashlib.sha256(canonical_bytes(state_document(w))).hexdigest()


def to_document(w: Workspace) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "hash_algorithm": HASH_ALGORITHM,
        "log": [
            {
                "command": e.command,
                "before_hash": e.before_hash,
                "after_hash": e.after_hash,
                "before_state": e.before_state,
            }
            for e in w.log
        ],
    }
    doc.update(state_document(w))
    return doc


def save(w: Workspace) -> bytes:
    return canonical_bytes(to_document(w))


def validate_workspace(w: Workspace) -> list:
    out = []
    for name, d in sorted(w.diagrams.items()):
        if d.dimension >= 1:
            base = base_for(w.signature, d.dimension)
            out += [(name, v) for v in validate_zigzag(base, d.payload)]
        out += [(name, v) for v in validate_dimensions(w.signature, d)]
    return out


def load(data: bytes) -> Workspace:
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as e:
        raise ParseError(str(e))
    if not isinstance(doc, dict):
        raise ParseError("workspace document must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"format_version {version!r}")
    signature = decode_signature(doc.get("signature", []))
    diagrams = {
        name: decode_diagram(d) for name, d in doc.get("diagrams", {}).items()
    }
    log = tuple(
        LogEntry(
            e["command"], e["before_hash"], e["after_hash"], e["before_state"]
        )
        for e in doc.get("log", [])
    )
    w = Workspace(signature, diagrams, log)
    violations = validate_workspace(w)
    if violations:
        raise ValidationFailed(violations)
    return w


def from_state_document(doc) -> Workspace:
    return Workspace(
        decode_signature(doc.get("signature", [])),
        {name: decode_diagram(d) for name, d in doc.get("diagrams", {}).items()},
        (),
    )


# ---------------------------------------------------------------------------
# paths, windows, splits


def parse_path(text: str) -> tuple:
    text = text.strip()
    if text in ("", "-", "."):
        return ()
    out = []
    for token in text.split(","):
        token = token.strip()
        if len(token) < 2 or token[0] not in (REGULAR, SINGULAR):
            raise ParseError(f"bad path coordinate {token!r}")
        try:
            out.append((token[0], int(token[1:])))
        except ValueError:
            raise ParseError(f"bad path coordinate {token!r}")
    return tuple(out)


def format_path(path) -> str:
    return ",".join(f"{kind}{i}" for kind, i in path) or "-"


def parse_window(text: str) -> tuple:
    try:
        a, b = text.split("..")
        return int(a), int(b)
    except ValueError:
        raise ParseError(f"bad window {text!r}, expected a..b")


def parse_split(text: str) -> tuple:
    try:
        first, second = text.split("/")
        return (
            tuple(int(v) for v in first.split(",") if v != ""),
            tuple(int(v) for v in second.split(",") if v != ""),
        )
    except ValueError:
        raise ParseError(f"bad split {text!r}, expected csv/csv")


BIASES = {"lower": Bias.LOWER, "higher": Bias.HIGHER}


# ---------------------------------------------------------------------------
# script commands


def _flags(tokens, allowed):
    out = {}
    i = 0
    while i < len(tokens):
        t = tokens[i]
        if not t.startswith("--"):
            raise ParseError(f"unexpected token {t!r}")
        key = t[2:]
        if key not in allowed:
            raise ParseError(f"unknown flag {t!r}")
        if i + 1 >= len(tokens):
            raise ParseError(f"flag {t!r} needs a value")
        out[key] = tokens[i + 1]
        i += 2
    return out


def _need(flags: dict, key: str) -> str:
    if key not in flags:
        raise ParseError(f"missing required flag --{key}")
    return flags[key]


def _record(w: Workspace, command: str, after: Workspace) -> Workspace:
    entry = LogEntry(command, state_hash(w), state_hash(after), state_document(w))
    return replace(after, log=w.log + (entry,))


def contract_command(w, name, directive: ContractionDirective, command_text=None):
    d = w.diagrams[name]
    result, _ = contract_at(w.signature, d, directive)
    after = replace(w, diagrams={**w.diagrams, name: result})
    bias = {Bias.LOWER: " --bias lower", Bias.HIGHER: " --bias higher"}.get(
        directive.bias, ""
    )
    text = command_text or (
        f"contract {name} --path {format_path(directive.path)} "
        f"--window {directive.window[0]}..{directive.window[1]}{bias}"
    )
    return _record(w, text, after)


def expand_command(w, name, directive: ExpansionDirective, command_text=None):
    d = w.diagrams[name]
    result, _ = expand_at(w.signature, d, directive)
    after = replace(w, diagrams={**w.diagrams, name: result})
    first = "lower" if directive.direction is Bias.LOWER else "higher"
    split = "/".join(",".join(str(v) for v in g) for g in directive.split)
    text = command_text or (
        f"expand {name} --path {format_path(directive.path)} "
        f"--height {directive.height} --split {split} --first {first}"
    )
    return _record(w, text, after)


def apply_command(w: Workspace, line: str, root: Path | None = None) -> Workspace:
    """Apply one script command, returning the next workspace value."""
    root = root or Path(".")
    try:
        tokens = shlex.split(line, comments=False)
    except ValueError as e:
        raise ParseError(str(e))
    if not tokens:
        return w
    head, rest = tokens[0], tokens[1:]

    if head == "signature":
        if len(rest) < 3 or rest[0] != "add":
            raise ParseError("expected: signature add <id> <dim> [name] [color]")
        _, label_id, dim, *extra = rest
        try:
            label = Label(label_id, int(dim), *extra[:2])
        except ValueError as e:
            raise ParseError(str(e))
        after = replace(w, signature=w.signature.add(label))
        return _record(w, line.strip(), after)

    if head == "diagram":
        if len(rest) < 2:
            raise ParseError("diagram command needs a kind and a name")
        kind, name = rest[0], rest[1]
        args = rest[2:]
        if kind == "literal":
            (path,) = args
            try:
                doc = json.loads((root / path).read_text("utf-8"))
            except OSError as e:
                raise ParseError(str(e))
            except json.JSONDecodeError as e:
                raise ParseError(str(e), location=path)
            d = decode_diagram(doc)
        elif kind == "cone":
            label, src, tgt = args
            d = cone_generator(
                w.signature, label, w.diagrams[src], w.diagrams[tgt]
            )
        elif kind == "concat":
            a, b = args
            da, db = w.diagrams[a], w.diagrams[b]
            if da.dimension != db.dimension or da.dimension < 1:
                raise ParseError("concat needs two diagrams of equal dimension >= 1")
            d = Diagram(da.dimension, concatenate(da.payload, db.payload))
        elif kind == "suspend":
            (a,) = args
            d = identity_suspend(w.diagrams[a])
        else:
            raise ParseError(f"unknown diagram command {kind!r}")
        after = replace(w, diagrams={**w.diagrams, name: d})
        violations = validate_workspace(after)
        if violations:
            raise ValidationFailed(violations)
        return _record(w, line.strip(), after)

    if head == "contract":
        name, flags = rest[0], _flags(rest[1:], {"path", "window", "bias"})
        directive = ContractionDirective(
            parse_path(flags.get("path", "")),
            parse_window(_need(flags, "window")),
            BIASES.get(flags.get("bias", ""), Bias.NONE),
        )
        return contract_command(w, name, directive, line.strip())

    if head == "expand":
        name, flags = rest[0], _flags(
            rest[1:], {"path", "height", "split", "first"}
        )
        directive = ExpansionDirective(
            parse_path(flags.get("path", "")),
            int(_need(flags, "height")),
            parse_split(_need(flags, "split")),
            BIASES.get(flags.get("first", "lower"), Bias.LOWER),
        )
        return expand_command(w, name, directive, line.strip())

    if head == "assert":
        if rest[:1] == ["length"]:
            _, name, k = rest
            d = w.diagrams[name]
            actual = d.payload.length if d.dimension >= 1 else 0
            if actual != int(k):
                raise AssertionFailed(f"{name} has length {actual}, expected {k}")
            return w
        if rest[:1] == ["fails"]:
            inner = line.strip().split(None, 2)[2]
            try:
                apply_command(w, inner, root)
            except EngineError:
                return w
            raise AssertionFailed(f"{inner!r} was expected to fail, but succeeded")
        raise ParseError(f"unknown assertion {rest[:1]}")

    if head == "render":
        name, flags = rest[0], _flags(rest[1:], {"slice", "out"})
        d = slice_diagram(w.diagrams[name], parse_path(flags.get("slice", "")))
        payload = emit_svg(project(w.signature, d))
        (root / _need(flags, "out")).write_bytes(payload)
        return w

    raise ParseError(f"unknown command {head!r}")


def parse_script(text: str) -> list:
    """The non-empty command lines of a proof script."""
    out = []
    for number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        out.append((number, stripped))
    return out


def replay(w: Workspace, script: str, root: Path | None = None) -> Workspace:
    """Apply every command of the script in order.

    On failure, raises ReplayFailed carrying the failing line number, the
    underlying error, and the workspace as of the last successful command.
    """
    for number, line in parse_script(script):
        try:
            w = apply_command(w, line, root)
        except KeyError as e:
            raise ReplayFailed(number, ParseError(f"unknown diagram {e}"), w)
        except EngineError as e:
            raise ReplayFailed(number, e, w)
    return w


def undo(w: Workspace) -> Workspace:
    if not w.log:
        raise NothingToUndo("the log is empty")
    last = w.log[-1]
    restored = from_state_document(last.before_state)
    return replace(restored, log=w.log[:-1])


def verify_log(w: Workspace) -> list:
    """Replay every log entry from its stored before-state and compare the
    recomputed after-hash; returns a list of (index, problem) pairs."""
    out = []
    for index, entry in enumerate(w.log):
        before = from_state_document(entry.before_state)
        if state_hash(before) != entry.before_hash:
            out.append((index, "before-state does not match its hash"))
            continue
        try:
            after = apply_command(before, entry.command)
        except EngineError as e:
            out.append((index, f"replay failed: {e}"))
            continue
        if state_hash(after) != entry.after_hash:
            out.append((index, "after-hash does not match replay"))
    return out
