"""Recompute the parameter tables of the shipped codes and diff them against
the reference values in ``data/reference_tables.tsv``."""

from __future__ import annotations

import csv
from dataclasses import dataclass, fields

from .fixtures import data_path, load_code, load_ubb
from .ubb import verify_strength

__all__ = ["TableReport", "TableRow", "reference_rows", "report_tables"]

COLUMNS = ("order", "n", "lam", "delta_rep", "delta_tw", "r", "r_prime", "b", "ubb_size")
_FILE_COLUMNS = dict(zip(COLUMNS, ("order", "n", "lambda", "delta_rep", "delta_tw", "r", "r_prime", "b", "ubb_size")))


@dataclass(frozen=True)
class TableRow:
    table: int
    fixture: str
    group: str
    order: int
    n: int
    lam: int
    delta_rep: int
    delta_tw: int
    r: int
    r_prime: int
    b: int
    ubb_size: int

    def values(self) -> tuple[int, ...]:
        return tuple(getattr(self, c) for c in COLUMNS)


@dataclass
class TableReport:
    computed: list[TableRow]
    reference: list[TableRow]
    ubb_strength_ok: dict[str, bool]

    def diff(self) -> list[str]:
        """One line per mismatching cell or failing UBB; empty when all agree."""
        out = []
        want = {r.fixture: r for r in self.reference}
        for row in self.computed:
            ref = want[row.fixture]
            for c in COLUMNS:
                if getattr(row, c) != getattr(ref, c):
                    out.append(f"{row.group}: {c} computed {getattr(row, c)}, reference {getattr(ref, c)}")
            if not self.ubb_strength_ok[row.fixture]:
                out.append(f"{row.group}: shipped UBB fails strength {row.r_prime}")
        return out

    def format(self) -> str:
        head = f"{'table':>5} {'group':<10} {'|G|':>7} {'n':>3} {'lam':>3} {'d_rep':>5} {'d_tw':>5} {'r':>3} {'r`':>3} {'b':>3} {'|U|':>4}  UBB"
        lines = [head]
        for row in self.computed:
            lines.append(
                f"{row.table:>5} {row.group:<10} {row.order:>7} {row.n:>3} {row.lam:>3} "
                f"{row.delta_rep:>5} {row.delta_tw:>5} {row.r:>3} {row.r_prime:>3} {row.b:>3} "
                f"{row.ubb_size:>4}  {'ok' if self.ubb_strength_ok[row.fixture] else 'FAIL'}"
            )
        diff = self.diff()
        lines.append("diff: none" if not diff else "diff:\n  " + "\n  ".join(diff))
        return "\n".join(lines)

    def tsv(self) -> str:
        names = [f.name for f in fields(TableRow)] + ["ubb_ok"]
        lines = ["\t".join(names)]
        for row in self.computed:
            cells = [str(getattr(row, n)) for n in names[:-1]] + [str(int(self.ubb_strength_ok[row.fixture]))]
            lines.append("\t".join(cells))
        return "\n".join(lines)


def reference_rows() -> list[TableRow]:
    with open(data_path("reference_tables.tsv"), newline="") as fh:
        lines = [ln for ln in fh if not ln.startswith("#")]
    rows = []
    for rec in csv.DictReader(lines, delimiter="\t"):
        rows.append(TableRow(
            int(rec["table"]), rec["fixture"], rec["group"],
            *(int(rec[_FILE_COLUMNS[c]]) for c in COLUMNS),
        ))
    return rows


def compute_row(table: int, fixture: str, group: str) -> tuple[TableRow, bool]:
    code = load_code(fixture)
    ubb = load_ubb(fixture)
    r_tw, r_prime = code.correction_params()
    row = TableRow(
        table, fixture, group, code.g1.order(), code.n, code.lam, code.delta_rep(), code.delta_tw(),
        r_tw, r_prime, code.g1.base_size(), len(ubb),
    )
    ok = not ubb.non_bases() and bool(verify_strength(ubb, n=code.n, strength=r_prime))
    return row, ok


def report_tables(tables: tuple[int, ...] = (1, 2)) -> TableReport:
    reference = [r for r in reference_rows() if r.table in tables]
    computed, ok = [], {}
    for ref in reference:
        row, good = compute_row(ref.table, ref.fixture, ref.group)
        computed.append(row)
        ok[ref.fixture] = good
    return TableReport(computed, reference, ok)
