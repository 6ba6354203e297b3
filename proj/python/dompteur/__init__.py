# Copyright 2026 The Dompteur Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Psychoacoustic and band-pass input hardening for ASR front ends."""

from ._core import (
    DEFAULT_FRAME_LEN,
    DEFAULT_HOP,
    Error,
    SnrsegResult,
    Spectrogram,
    WerBreakdown,
    apply_mask,
    band_pass,
    compute_mask,
    compute_thresholds,
    dompteur_filter,
    hz_to_bark,
    istft,
    magnitude_db,
    mask_gradient_bandpass,
    mask_gradient_psycho,
    read_wav,
    snrseg,
    stft,
    threshold_in_quiet,
    wer,
    write_wav,
)

Error.kind = property(lambda self: self.args[0], doc="snake_case error kind")

__all__ = [
    "DEFAULT_FRAME_LEN",
    "DEFAULT_HOP",
    "Error",
    "SnrsegResult",
    "Spectrogram",
    "WerBreakdown",
    "apply_mask",
    "band_pass",
    "compute_mask",
    "compute_thresholds",
    "dompteur_filter",
    "hz_to_bark",
    "istft",
    "magnitude_db",
    "mask_gradient_bandpass",
    "mask_gradient_psycho",
    "read_wav",
    "snrseg",
    "stft",
    "threshold_in_quiet",
    "wer",
    "write_wav",
]
