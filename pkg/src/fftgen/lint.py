"""Structural checks over Verilog text.

Line-level rules, not a grammar-complete parser:
  unbalanced-module     module/endmodule pairing          (error)
  undeclared-identifier instantiation connections naming
                        nets/ports/params not declared
                        in the enclosing module           (error)
  port-net-type         port without an explicit wire/reg (warning)
  missing-async-reset   clocked always block that touches
                        a reset signal whose negedge is
                        not in the sensitivity list       (warning)
"""

from __future__ import annotations

import re
from bisect import bisect_right
from dataclasses import dataclass

_KEYWORDS = frozenset(
    """always and assign automatic begin buf bufif0 bufif1 case casex casez cell
    cmos config deassign default defparam design disable edge else end endcase
    endconfig endfunction endgenerate endmodule endprimitive endspecify endtable
    endtask event for force forever fork function generate genvar highz0 highz1
    if ifnone incdir include initial inout input instance integer join large
    liblist library localparam macromodule medium module nand negedge nmos nor
    noshowcancelled not notif0 notif1 or output parameter pmos posedge primitive
    pull0 pull1 pulldown pullup pulsestyle_onevent pulsestyle_ondetect rcmos
    real realtime reg release repeat rnmos rpmos rtran rtranif0 rtranif1
    scalared showcancelled signed small specify specparam strong0 strong1 supply0
    supply1 table task time tran tranif0 tranif1 tri tri0 tri1 triand trior
    trireg unsigned use vectored wait wand weak0 weak1 while wire wor xnor
    xor""".split()
)

_SIZED_LITERAL = re.compile(r"\d*\s*'\s*[sS]?[bodhBODH]\s*[0-9a-fA-F_xXzZ?]+")
_NUMBER = re.compile(r"\b\d[\d_]*\b")
_IDENT = re.compile(r"\b[A-Za-z_]\w*\b")
_RESET_NAME = re.compile(r"rst|reset", re.IGNORECASE)


@dataclass(frozen=True)
class LintDiagnostic:
    severity: str  # "error" | "warning"
    rule: str
    line: int      # 1-based
    message: str

    def render(self) -> str:
        return f"{self.severity}: line {self.line}: [{self.rule}] {self.message}"


def lint_structural(text: str) -> list[LintDiagnostic]:
    """Run all rules over one source text (any number of modules)."""
    clean = _blank_comments_and_strings(text)
    line_starts = [0]
    for i, ch in enumerate(clean):
        if ch == "\n":
            line_starts.append(i + 1)

    def line_of(offset: int) -> int:
        return bisect_right(line_starts, offset)

    diags: list[LintDiagnostic] = []
    spans = _module_spans(clean, line_of, diags)
    for start, end in spans:
        _check_module(clean[start:end], start, line_of, diags)
    diags.sort(key=lambda d: (d.line, d.rule))
    return diags


def has_errors(diags: list[LintDiagnostic]) -> bool:
    return any(d.severity == "error" for d in diags)


# ---------------------------------------------------------------------------
# Text preparation and module splitting
# ---------------------------------------------------------------------------

def _blank_comments_and_strings(text: str) -> str:
    """Overwrite comments and string literals with spaces, keeping newlines."""
    out = list(text)
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "/" and i + 1 < n and text[i + 1] == "/":
            while i < n and text[i] != "\n":
                out[i] = " "
                i += 1
        elif ch == "/" and i + 1 < n and text[i + 1] == "*":
            while i < n and not (text[i] == "*" and i + 1 < n and text[i + 1] == "/"):
                if text[i] != "\n":
                    out[i] = " "
                i += 1
            if i + 1 < n:
                out[i] = out[i + 1] = " "
                i += 2
        elif ch == '"':
            out[i] = " "
            i += 1
            while i < n and text[i] != '"':
                if text[i] != "\n":
                    out[i] = " "
                i += 1
            if i < n:
                out[i] = " "
                i += 1
        else:
            i += 1
    return "".join(out)


def _module_spans(clean, line_of, diags) -> list[tuple[int, int]]:
    spans = []
    stack: list[int] = []
    for m in re.finditer(r"\b(module|macromodule|endmodule)\b", clean):
        if m.group(1) == "endmodule":
            if not stack:
                diags.append(
                    LintDiagnostic(
                        "error",
                        "unbalanced-module",
                        line_of(m.start()),
                        "endmodule without a matching module",
                    )
                )
            else:
                spans.append((stack.pop(), m.end()))
        else:
            stack.append(m.start())
    for start in stack:
        diags.append(
            LintDiagnostic(
                "error",
                "unbalanced-module",
                line_of(start),
                "module without a matching endmodule",
            )
        )
    return spans


def _match_paren(text: str, open_idx: int) -> int:
    """Index just past the parenthesis group opening at open_idx."""
    depth = 0
    for i in range(open_idx, len(text)):
        if text[i] == "(":
            depth += 1
        elif text[i] == ")":
            depth -= 1
            if depth == 0:
                return i + 1
    return len(text)


def _split_depth0(text: str, sep: str = ",") -> list[tuple[int, str]]:
    """Split at separators outside (), [], {}; yields (offset, chunk)."""
    chunks, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch == sep and depth == 0:
            chunks.append((start, text[start:i]))
            start = i + 1
    chunks.append((start, text[start:]))
    return chunks


# ---------------------------------------------------------------------------
# Per-module rules
# ---------------------------------------------------------------------------

def _check_module(mod: str, base: int, line_of, diags: list[LintDiagnostic]) -> None:
    declared: set[str] = set()

    header_end = _collect_header(mod, base, line_of, diags, declared)
    body = mod[header_end:]
    body_base = base + header_end

    _collect_body_decls(body, body_base, line_of, diags, declared)
    _check_instantiations(body, body_base, line_of, diags, declared)
    _check_always_resets(body, body_base, line_of, diags)


def _collect_header(mod, base, line_of, diags, declared) -> int:
    """Parse the ANSI header; returns offset just past the port list."""
    m = re.match(r"\s*(?:macro)?module\s+(\w+)", mod)
    pos = m.end() if m else 0

    rest = mod[pos:]
    hash_m = re.match(r"\s*#\s*\(", rest)
    if hash_m:
        group_end = _match_paren(rest, hash_m.end() - 1)
        _collect_params(rest[hash_m.end() : group_end - 1], declared)
        pos += group_end
        rest = mod[pos:]

    paren_m = re.match(r"\s*\(", rest)
    if not paren_m:
        semi = mod.find(";", pos)
        return semi + 1 if semi >= 0 else pos

    group_end = _match_paren(rest, paren_m.end() - 1)
    ports_text = rest[paren_m.end() : group_end - 1]
    ports_base = base + pos + paren_m.end()

    for off, chunk in _split_depth0(ports_text):
        dir_m = re.search(r"\b(input|output|inout)\b", chunk)
        names = [t for t in _IDENT.findall(chunk) if t not in _KEYWORDS]
        if dir_m and names:
            if not re.search(r"\b(wire|reg|tri|tri0|tri1|wand|wor)\b", chunk):
                diags.append(
                    LintDiagnostic(
                        "warning",
                        "port-net-type",
                        line_of(ports_base + off + dir_m.start()),
                        f"port '{names[-1]}' has no explicit net type (wire/reg)",
                    )
                )
        declared.update(names)
    return pos + group_end


def _collect_params(text: str, declared: set[str]) -> None:
    for name in re.findall(r"([A-Za-z_]\w*)\s*=", text):
        declared.add(name)


_DECL_STMT = re.compile(
    r"^[ \t]*(wire|reg|integer|genvar|real|realtime|time|tri|tri0|tri1|supply0|supply1)\b([^;]*);",
    re.MULTILINE,
)
_PARAM_STMT = re.compile(r"\b(parameter|localparam)\b([^;]*);")
_DIR_STMT = re.compile(r"^[ \t]*(input|output|inout)\b([^;]*);", re.MULTILINE)


def _decl_names(decl_rest: str) -> list[str]:
    """Names in a declaration tail: strip ranges, take first ident per item."""
    no_ranges = re.sub(r"\[[^\]]*\]", " ", decl_rest)
    names = []
    for _, item in _split_depth0(no_ranges):
        item = item.split("=")[0]
        ids = [t for t in _IDENT.findall(item) if t not in _KEYWORDS]
        if ids:
            names.append(ids[0])
    return names


def _collect_body_decls(body, base, line_of, diags, declared) -> None:
    for m in _DECL_STMT.finditer(body):
        declared.update(_decl_names(m.group(2)))
    for m in _PARAM_STMT.finditer(body):
        _collect_params(m.group(2), declared)
    for m in _DIR_STMT.finditer(body):
        names = _decl_names(m.group(2))
        declared.update(names)
        if not re.search(r"\b(wire|reg|tri|tri0|tri1|wand|wor)\b", m.group(2)):
            diags.append(
                LintDiagnostic(
                    "warning",
                    "port-net-type",
                    line_of(base + m.start()),
                    f"port '{names[-1] if names else '?'}' has no explicit net type (wire/reg)",
                )
            )


_INSTANCE = re.compile(
    r"\b([A-Za-z_]\w*)\s*(#\s*\([^;]*?\))?\s*([A-Za-z_]\w*)\s*\(\s*\.[^;]*?\)\s*;",
    re.DOTALL,
)
_CONNECTION = re.compile(r"\.\s*([A-Za-z_]\w*)\s*\(([^()]*)\)")


def _expr_idents(expr: str) -> list[str]:
    expr = _SIZED_LITERAL.sub(" ", expr)
    expr = _NUMBER.sub(" ", expr)
    return [t for t in _IDENT.findall(expr) if t not in _KEYWORDS]


def _check_instantiations(body, base, line_of, diags, declared) -> None:
    for m in _INSTANCE.finditer(body):
        if m.group(1) in _KEYWORDS or m.group(3) in _KEYWORDS:
            continue
        for conn in _CONNECTION.finditer(m.group(0)):
            for ident in _expr_idents(conn.group(2)):
                if ident not in declared:
                    diags.append(
                        LintDiagnostic(
                            "error",
                            "undeclared-identifier",
                            line_of(base + m.start() + conn.start()),
                            f"connection .{conn.group(1)}({conn.group(2).strip()}) "
                            f"uses undeclared identifier '{ident}' "
                            f"(instance {m.group(3)} of {m.group(1)})",
                        )
                    )


_ALWAYS = re.compile(r"\balways\b\s*@\s*\(([^)]*)\)")


def _always_body(body: str, start: int) -> str:
    """Statement or begin/end block following an always sensitivity list."""
    i = start
    while i < len(body) and body[i].isspace():
        i += 1
    if body.startswith("begin", i):
        depth, j = 0, i
        for tok in re.finditer(r"\b(begin|end)\b", body[i:]):
            depth += 1 if tok.group(1) == "begin" else -1
            if depth == 0:
                j = i + tok.end()
                break
        else:
            j = len(body)
        return body[i:j]
    semi = body.find(";", i)
    return body[i : semi + 1 if semi >= 0 else len(body)]


def _check_always_resets(body, base, line_of, diags) -> None:
    for m in _ALWAYS.finditer(body):
        sens = m.group(1)
        if not re.search(r"\b(posedge|negedge)\b", sens):
            continue  # combinational block
        block = _always_body(body, m.end())
        reset_ids = {
            t
            for t in _IDENT.findall(block)
            if t not in _KEYWORDS and _RESET_NAME.search(t)
        }
        for rid in sorted(reset_ids):
            if not re.search(rf"\bnegedge\s+{re.escape(rid)}\b", sens):
                diags.append(
                    LintDiagnostic(
                        "warning",
                        "missing-async-reset",
                        line_of(base + m.start()),
                        f"sequential block uses '{rid}' but its sensitivity list "
                        f"lacks 'negedge {rid}' (asynchronous active-low reset)",
                    )
                )
