"""Convergence reports and deterministic CSV/text serialization."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass


def fmt(x: float | None) -> str:
    """17-significant-digit scientific notation; exact float round-trip."""
    return "" if x is None else f"{x:.16e}"


def parse(field: str) -> float | None:
    return None if field == "" else float(field)


@dataclass(frozen=True)
class ConvergenceRow:
    h: float
    tau: float | None
    error: float
    temporal_order: float | None
    spatial_order: float | None


@dataclass(frozen=True)
class ConvergenceReport:
    study: str
    problem: str
    alpha: float
    norm: str
    rows: tuple[ConvergenceRow, ...]

    def csv_rows(self) -> list[list[str]]:
        out = []
        for r in self.rows:
            out.append([self.study, self.problem, fmt(self.alpha), self.norm,
                        fmt(r.h), fmt(r.tau), fmt(r.error),
                        fmt(r.temporal_order), fmt(r.spatial_order)])
        return out


CONVERGENCE_HEADER = ["study", "problem", "alpha", "norm",
                      "h", "tau", "error", "temporal_order", "spatial_order"]


def write_csv(path, header: list[str], rows: list[list[str]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())


def read_convergence_csv(path) -> list[ConvergenceReport]:
    """Rebuild reports from a CSV written by the CLI; exact round-trip."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CONVERGENCE_HEADER:
            raise ValueError(f"unexpected CSV header: {header}")
        groups: dict[tuple, list[ConvergenceRow]] = {}
        order: list[tuple] = []
        for rec in reader:
            key = (rec[0], rec[1], rec[2], rec[3])
            if key not in groups:
                groups[key] = []
                order.append(key)
            groups[key].append(ConvergenceRow(
                h=parse(rec[4]), tau=parse(rec[5]), error=parse(rec[6]),
                temporal_order=parse(rec[7]), spatial_order=parse(rec[8])))
    return [ConvergenceReport(study=k[0], problem=k[1], alpha=float(k[2]),
                              norm=k[3], rows=tuple(groups[k]))
            for k in order]


def text_table(title: str, header: list[str], rows: list[list[str]]) -> str:
    """Fixed-width table for eyeball comparison against published layouts."""
    widths = [len(name) for name in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [title]
    lines.append("  ".join(name.ljust(widths[i]) for i, name in enumerate(header)))
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines) + "\n"


def convergence_text(reports: list[ConvergenceReport]) -> str:
    chunks = []
    for rep in reports:
        head = ["h", "tau", "error", "temporal order", "spatial order"]
        rows = []
        for r in rep.rows:
            rows.append([
                f"1/{round(1 / r.h)}" if r.h and abs(1 / r.h - round(1 / r.h)) < 1e-9 else f"{r.h:g}",
                "" if r.tau is None else (
                    f"1/{round(1 / r.tau)}" if abs(1 / r.tau - round(1 / r.tau)) < 1e-9 else f"{r.tau:g}"),
                f"{r.error:.6e}",
                "---" if r.temporal_order is None else f"{r.temporal_order:.4f}",
                "---" if r.spatial_order is None else f"{r.spatial_order:.4f}",
            ])
        title = (f"{rep.study} | problem {rep.problem} | alpha = {rep.alpha:g} "
                 f"| norm = {rep.norm}")
        chunks.append(text_table(title, head, rows))
    return "\n".join(chunks)
