"""
Formato texto de matrizes usado por fixtures e pela saída da CLI.

Cada matriz começa com a linha "rows cols" seguida de ``rows`` linhas com
``cols`` entradas complexas "re+imj" com 17 dígitos significativos.
Linhas iniciadas por '#' são comentários; um arquivo pode conter várias
matrizes em sequência.
"""

from pathlib import Path
from typing import Iterable, List, Optional, Union

import numpy as np

from core.exceptions import ScenarioError
from core.linalg import as_matrix


def format_entry(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}j"


def format_matrix(M, header: Optional[str] = None) -> str:
    arr = as_matrix(M)
    lines = []
    if header:
        lines.extend(f"# {line}" for line in header.splitlines())
    lines.append(f"{arr.shape[0]} {arr.shape[1]}")
    for row in arr:
        lines.append(" ".join(format_entry(complex(z)) for z in row))
    return "\n".join(lines) + "\n"


def format_matrices(matrices: Iterable, header: Optional[str] = None) -> str:
    chunks = [format_matrix(M, header if k == 0 else None) for k, M in enumerate(matrices)]
    return "".join(chunks)


def parse_matrices(text: str, source: str = "<text>") -> List[np.ndarray]:
    """Lê todas as matrizes de um texto no formato de fixture."""
    tokens: List[tuple] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens.extend((lineno, tok) for tok in line.split())

    matrices: List[np.ndarray] = []
    pos = 0
    while pos < len(tokens):
        lineno, tok = tokens[pos]
        try:
            rows = int(tokens[pos][1])
            cols = int(tokens[pos + 1][1])
        except (IndexError, ValueError):
            raise ScenarioError(f"{source}:{lineno}", f"expected 'rows cols' header, got '{tok}'")
        if rows < 1 or cols < 1:
            raise ScenarioError(f"{source}:{lineno}", f"invalid matrix shape {rows}x{cols}")
        pos += 2

        count = rows * cols
        if pos + count > len(tokens):
            raise ScenarioError(f"{source}:{lineno}", f"expected {count} entries for {rows}x{cols} matrix")
        values = []
        for entry_line, entry in tokens[pos:pos + count]:
            try:
                values.append(complex(entry))
            except ValueError:
                raise ScenarioError(f"{source}:{entry_line}", f"invalid complex entry '{entry}'")
        pos += count
        matrices.append(as_matrix(np.array(values, dtype=complex).reshape(rows, cols), source))

    if not matrices:
        raise ScenarioError(source, "no matrix found")
    return matrices


def read_matrices(path: Union[str, Path]) -> List[np.ndarray]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ScenarioError(str(path), f"cannot read file: {e}")
    return parse_matrices(text, source=str(path))


def write_matrices(path: Union[str, Path], matrices: Iterable, header: Optional[str] = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrices(matrices, header))
    return path
