"""
Benchmark and size reporting
BenchReport wraps one pandas DataFrame of per-operation timings; size tables
reproduce the key, ciphertext and signature sizes for every in-scope row.
"""
from dataclasses import dataclass, field
from typing import Dict, List

import pandas as pd
import plotly.graph_objects as go

from . import config
from .params import DS_LEVELS, KEM_LEVELS, ds_params, kem_params


@dataclass
class BenchReport:
    """Per-operation statistics for one or more parameter sets; the scheme column allows merging external numbers"""
    frame: pd.DataFrame
    sizes: pd.DataFrame = field(default_factory=pd.DataFrame)
    notes: List[str] = field(default_factory=list)

    @property
    def ops(self) -> List[str]:
        return list(dict.fromkeys(self.frame["op"]))

    @property
    def contaminated(self) -> pd.DataFrame:
        """Rows whose median exceeds the mean (outlier contamination)"""
        return self.frame[self.frame["median_ns"] > self.frame["mean_ns"]]

    def median(self, scheme: str, level: int, op: str) -> float:
        rows = self.frame[(self.frame["scheme"] == scheme) & (self.frame["level"] == level) & (self.frame["op"] == op)]
        return float(rows["median_ns"].iloc[0])

    def to_text(self) -> str:
        lines = [self.frame.to_string(index=False)]
        if not self.sizes.empty:
            lines += ["", "Artifact sizes (bytes)", self.sizes.to_string(index=False)]
        for _, row in self.contaminated.iterrows():
            lines.append(f"⚠️ {row['scheme']} level {row['level']} {row['op']}: median above mean (outliers)")
        lines += self.notes
        return "\n".join(lines)

    def to_csv(self, path):
        self.frame[config.BENCH_CSV_COLUMNS].to_csv(path, index=False)

    def to_chart(self, path):
        """Grouped bar chart of median time per operation, one bar group per level"""
        fig = go.Figure()
        for (scheme, level), group in self.frame.groupby(["scheme", "level"], sort=False):
            fig.add_trace(go.Bar(name=f"{scheme} L{level}", x=group["op"], y=group["median_ns"] / 1000))
        fig.update_layout(
            barmode="group",
            title="HPPK median operation time",
            xaxis_title="Operation",
            yaxis_title="Median (µs)",
            height=400
        )
        fig.write_html(str(path))


def merge_reports(reports: List[BenchReport]) -> BenchReport:
    frames = [r.frame for r in reports]
    sizes = [r.sizes for r in reports if not r.sizes.empty]
    notes = list(dict.fromkeys(n for r in reports for n in r.notes))
    return BenchReport(
        frame=pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=config.BENCH_CSV_COLUMNS),
        sizes=pd.concat(sizes, ignore_index=True) if sizes else pd.DataFrame(),
        notes=notes,
    )


def _kem_size_row(params) -> Dict[str, object]:
    return {
        "scheme": "kem", "level": params.level, "config": params.label(),
        "entropy": params.entropy_bits, "pk": params.pk_bytes, "sk": params.sk_bytes,
        "ct": params.ct_bytes,
    }


def _ds_size_row(params) -> Dict[str, object]:
    return {
        "scheme": "ds", "level": params.level, "config": params.label(),
        "entropy": params.entropy_bits, "pk": params.pk_bytes, "sk": params.sk_bytes,
        "sig": params.sig_bytes, "hash": params.hash_name.upper(),
    }


def size_table(scheme: str) -> pd.DataFrame:
    """Encoded sizes for every production configuration of one scheme"""
    if scheme == "kem":
        rows = [_kem_size_row(kem_params(level, m, rings))
                for m in (2, 3) for level in KEM_LEVELS for rings in (1, 2)]
    elif scheme == "ds":
        rows = []
        for level, (b, _, _) in DS_LEVELS.items():
            L = 2 * b + 16
            # K = 2L, L + 64, L + 32 for m = 2; L + 64, L + 32 for m = 1
            for m, barrett in ((2, L), (2, 64), (2, 32), (1, 64), (1, 32)):
                rows.append(_ds_size_row(ds_params(level, m, barrett)))
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    return pd.DataFrame(rows)


def params_size_row(params) -> pd.DataFrame:
    if hasattr(params, "ct_bytes"):
        return pd.DataFrame([_kem_size_row(params)])
    return pd.DataFrame([_ds_size_row(params)])
