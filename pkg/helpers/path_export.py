import os
from typing import List, Sequence

import numpy as np
import pandas as pd

from helpers.log import logs


def path_frame(path, species: Sequence[str]) -> pd.DataFrame:
    """Columns t, one per species, stopped (true on the row at the exit time)."""
    frame = pd.DataFrame(path.states, columns=list(species))
    frame.insert(0, 't', path.times)
    stopped = np.zeros(len(path.times), dtype=bool)
    if path.stopped:
        stopped[-1] = True
    frame['stopped'] = stopped
    return frame


def export_paths(paths, species: Sequence[str], output: str, per_path: bool = False) -> List[str]:
    """
    Write simulated paths as CSV. Concatenated mode writes one file with a leading `path_id`
    column; per-path mode treats `output` as a directory and writes path_<id>.csv files.
    """
    written = []
    if per_path:
        os.makedirs(output, exist_ok=True)
        for path_id, path in enumerate(paths):
            file_path = os.path.join(output, f"path_{path_id:05d}.csv")
            path_frame(path, species).to_csv(file_path, index=False)
            written.append(file_path)
    else:
        directory = os.path.dirname(output)
        if directory:
            os.makedirs(directory, exist_ok=True)
        frames = [path_frame(path, species).assign(path_id=path_id) for path_id, path in enumerate(paths)]
        combined = pd.concat(frames, ignore_index=True)
        combined = combined[['path_id'] + [c for c in combined.columns if c != 'path_id']]
        combined.to_csv(output, index=False)
        written.append(output)

    logs.debug(f"Exported {len(paths)} path(s) to {len(written)} file(s)")
    return written
