# Copyright 2026 The lssbg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Background subtraction with local self-similarity descriptors."""

from ._lssbg import (
    ArgumentError,
    BackgroundModel,
    DetectorConfig,
    Error,
    FormatError,
    IoError,
    LssParams,
    PostprocessConfig,
    StateError,
    TrainingState,
    close,
    confusion,
    descriptors,
    detect_raw,
    dilate,
    erode,
    load_model,
    metrics,
    padding_size,
    postprocess,
    rank_methods,
    to_grayscale,
)


def train(frames, params=None, train_threshold=1.0):
    """Builds a background model from an iterable of (H, W[, 3]) uint8 frames."""
    state = None
    for frame in frames:
        if state is None:
            state = TrainingState(frame.shape[1], frame.shape[0], params or LssParams(), train_threshold)
        state.update(frame)
    if state is None:
        raise StateError("no training frames")
    return state.finalize()


def segment(frame, model, detector=None, post=None):
    """Final foreground mask of one frame."""
    raw = detect_raw(frame, model, detector or DetectorConfig())
    return postprocess(raw, frame, model, post or PostprocessConfig())


__all__ = [name for name in dir() if not name.startswith("_")]
