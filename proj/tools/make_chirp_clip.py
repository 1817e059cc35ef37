"""Writes the synthetic speech-like test clip used by the audio tests.

Voiced syllables are harmonic chirps whose fundamental glides between 100 and
260 Hz under a fixed formant envelope; unvoiced bursts are short chirps
between 4 and 7 kHz. Output: 2 s, 44.1 kHz, 16-bit mono.
"""

import argparse
import wave

import numpy as np


def formant_gain(f):
    g = np.zeros_like(f)
    for centre, width, amp in ((500.0, 150.0, 1.0), (1500.0, 250.0, 0.5), (2500.0, 300.0, 0.25)):
        g += amp * np.exp(-0.5 * ((f - centre) / width) ** 2)
    return g + 0.02


def synth(seconds=2.0, rate=44100, seed=7):
    rng = np.random.default_rng(seed)
    t = np.arange(int(seconds * rate)) / rate
    out = np.zeros_like(t)
    start = 0.05
    while start < seconds - 0.2:
        dur = rng.uniform(0.12, 0.25)
        seg = (t >= start) & (t < start + dur)
        tau = t[seg] - start
        f0a, f0b = rng.uniform(100.0, 260.0, size=2)
        f0 = f0a + (f0b - f0a) * tau / dur
        phase = 2 * np.pi * np.cumsum(f0) / rate
        env = np.sin(np.pi * tau / dur) ** 2
        voiced = np.zeros_like(tau)
        for h in range(1, 40):
            fh = h * f0
            voiced += formant_gain(fh) * np.sin(h * phase) * (fh < rate / 2)
        out[seg] += env * voiced
        if rng.uniform() < 0.5:
            b0 = start + dur
            blen = rng.uniform(0.03, 0.06)
            seg = (t >= b0) & (t < b0 + blen)
            tau = t[seg] - b0
            fa, fb = rng.uniform(4000.0, 7000.0, size=2)
            ph = 2 * np.pi * (fa * tau + 0.5 * (fb - fa) / blen * tau ** 2)
            out[seg] += 0.15 * np.sin(np.pi * tau / blen) ** 2 * np.sin(ph)
            dur += blen
        start += dur + rng.uniform(0.02, 0.08)
    return out / np.max(np.abs(out)) * 0.8, rate


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("output")
    ap.add_argument("--seconds", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args()
    x, rate = synth(args.seconds, seed=args.seed)
    pcm = np.clip(np.round(x * 32768.0), -32768, 32767).astype("<i2")
    with wave.open(args.output, "wb") as w:
        w.setnchannels(1)
        w.setsampwidth(2)
        w.setframerate(rate)
        w.writeframes(pcm.tobytes())


if __name__ == "__main__":
    main()
