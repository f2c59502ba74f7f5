"""Plain-text file formats: groups, representation tuples, UBBs, covers, logs.

All formats are line based; ``#`` starts a comment line and blank lines are
ignored.  Points are 1-based.

Group file::

    degree 8
    name ASL32
    gen (2,5)(4,7)
    gen (2,3,4)(5,6,8)

Representation tuple (group paths relative to the tuple file)::

    twisted ASL32
    component 1 asl32.group
    component 2 asl32.group
    map 2
    (1,3)(2,7)(4,5)(6,8)
    ...
    end
    psi 2 [1,2,3,4,5,6,7,8]

UBB file::

    ubb ASL32 strength 2
    1 2 3 5
    4 5 6 7

Covering design file::

    cover 8 4 2
    4 6 7 8
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .group import PermutationGroup
from .perm import Permutation, Word, parse_permutation
from .twisted import IsomorphismTable, PointBijection, TwistedCode
from .ubb import CoveringDesign, Ubb

__all__ = [
    "FormatError",
    "dump_cover",
    "dump_group",
    "dump_ubb",
    "format_word",
    "parse_cover",
    "parse_group",
    "parse_ubb",
    "parse_word",
    "read_cover",
    "read_group",
    "read_tuple",
    "read_ubb",
    "write_tuple",
]


class FormatError(ValueError):
    pass


def _lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((lineno, line))
    return out


def parse_group(text: str, name: str = "") -> PermutationGroup:
    degree = None
    gens: list[str] = []
    for lineno, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "degree":
            degree = int(rest)
        elif key == "name":
            name = rest
        elif key == "gen":
            if degree is None:
                raise FormatError(f"line {lineno}: generator before degree")
            gens.append(rest)
        else:
            raise FormatError(f"line {lineno}: unknown keyword {key!r}")
    if degree is None:
        raise FormatError("missing degree line")
    try:
        perms = [parse_permutation(g, degree) for g in gens]
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    return PermutationGroup(perms, degree=degree, name=name)


def dump_group(group: PermutationGroup, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"degree {group.degree}")
    if group.name:
        lines.append(f"name {group.name}")
    lines += [f"gen {g.cycle_string()}" for g in group.generators]
    return "\n".join(lines) + "\n"


def read_group(path) -> PermutationGroup:
    path = Path(path)
    return parse_group(path.read_text(), name=path.stem)


def read_tuple(path, check_permutational: bool = False) -> TwistedCode:
    """Load a representation tuple and build its :class:`TwistedCode`."""
    path = Path(path)
    name = path.stem
    components: dict[int, str] = {}
    maps: dict[int, list[str]] = {}
    psis: dict[int, str] = {}
    current = None
    for lineno, line in _lines(path.read_text()):
        if current is not None:
            if line == "end":
                current = None
            else:
                maps[current].append(line)
            continue
        parts = line.split(None, 2)
        key = parts[0]
        if key == "twisted":
            name = parts[1] if len(parts) > 1 else name
        elif key == "component":
            components[int(parts[1])] = parts[2]
        elif key == "map":
            current = int(parts[1])
            maps[current] = []
        elif key == "psi":
            psis[int(parts[1])] = parts[2]
        else:
            raise FormatError(f"{path.name} line {lineno}: unknown keyword {key!r}")
    if current is not None:
        raise FormatError(f"{path.name}: map block {current} not terminated by 'end'")
    lam = len(components)
    if sorted(components) != list(range(1, lam + 1)):
        raise FormatError(f"{path.name}: components must be numbered 1..{lam}")
    loaded: dict[Path, PermutationGroup] = {}
    groups = []
    for i in range(1, lam + 1):
        gpath = (path.parent / components[i]).resolve()
        if gpath not in loaded:
            loaded[gpath] = read_group(gpath)
        groups.append(loaded[gpath])
    g1 = groups[0]
    alphas = [IsomorphismTable.identity(g1)]
    for i in range(2, lam + 1):
        if i not in maps:
            raise FormatError(f"{path.name}: missing map block for component {i}")
        if len(maps[i]) != len(g1.generators):
            raise FormatError(
                f"{path.name}: map {i} lists {len(maps[i])} images for {len(g1.generators)} generators"
            )
        images = [parse_permutation(s, g1.degree) for s in maps[i]]
        alphas.append(IsomorphismTable.build(g1, groups[i - 1], images))
    psi_list = []
    for i in range(1, lam + 1):
        if i in psis:
            psi_list.append(PointBijection(parse_permutation(psis[i], g1.degree)))
        else:
            psi_list.append(PointBijection.identity(g1.degree))
    return TwistedCode(g1, alphas, psi_list, name=name, check_permutational=check_permutational)


def write_tuple(
    path,
    name: str,
    group_files: Sequence[str],
    maps: Sequence[Sequence[Permutation]],
    psis: Sequence[Permutation | None] | None = None,
    comments: Iterable[str] = (),
):
    """Write a tuple file.  ``maps[i]`` holds the images for component ``i + 2``."""
    lines = [f"# {c}" for c in comments]
    lines.append(f"twisted {name}")
    for i, f in enumerate(group_files, 1):
        lines.append(f"component {i} {f}")
    for i, images in enumerate(maps, 2):
        lines.append(f"map {i}")
        lines += [g.cycle_string() for g in images]
        lines.append("end")
    for i, psi in enumerate(psis or [], 1):
        if psi is not None and not psi.is_identity():
            lines.append(f"psi {i} {psi.list_string()}")
    Path(path).write_text("\n".join(lines) + "\n")


def parse_ubb(text: str, group: PermutationGroup | None = None) -> Ubb:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty UBB file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "ubb" or parts[2] != "strength":
        raise FormatError(f"line {lineno}: expected 'ubb <name> strength <r>'")
    rows = tuple(tuple(int(t) for t in line.split()) for _, line in lines[1:])
    return Ubb(rows, int(parts[3]), group, parts[1])


def dump_ubb(ubb: Ubb, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"ubb {ubb.name or (ubb.group.name if ubb.group else 'G')} strength {ubb.strength}")
    lines += [" ".join(map(str, b)) for b in ubb.bases]
    return "\n".join(lines) + "\n"


def read_ubb(path, group: PermutationGroup | None = None) -> Ubb:
    return parse_ubb(Path(path).read_text(), group)


def parse_cover(text: str) -> CoveringDesign:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty cover file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "cover":
        raise FormatError(f"line {lineno}: expected 'cover <n> <k> <r>'")
    n, k, r = (int(x) for x in parts[1:])
    blocks = tuple(tuple(int(t) for t in line.split()) for _, line in lines[1:])
    return CoveringDesign(n, k, r, blocks)


def dump_cover(cover: CoveringDesign, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    lines.append(f"cover {cover.n} {cover.block_size} {cover.strength}")
    lines += [" ".join(map(str, b)) for b in cover.blocks]
    return "\n".join(lines) + "\n"


def read_cover(path) -> CoveringDesign:
    return parse_cover(Path(path).read_text())


def parse_word(text: str, alphabet_size: int) -> Word:
    """Parse ``4,7,1 | 4,4,6`` (brackets, commas, bars and spaces are separators)."""
    cleaned = text
    for ch in "[]|,":
        cleaned = cleaned.replace(ch, " ")
    try:
        symbols = tuple(int(t) for t in cleaned.split())
    except ValueError as exc:
        raise FormatError(f"bad word {text!r}: {exc}") from exc
    try:
        return Word(symbols, alphabet_size)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_word(symbols: Sequence[int], n: int) -> str:
    """Components separated by `` | ``, symbols by commas."""
    symbols = [int(s) for s in symbols]
    parts = [",".join(map(str, symbols[i:i + n])) for i in range(0, len(symbols), n)]
    return "[" + " | ".join(parts) + "]"
