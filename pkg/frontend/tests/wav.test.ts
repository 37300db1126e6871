import { describe, expect, it } from "vitest";

import { encodeWav, encodeWavBytes } from "../src/wav.js";

describe("wav encoder", () => {
  it("writes a well-formed 16-bit PCM mono header", () => {
    const samples = new Float32Array([0, 0.5, -0.5, 1, -1]);
    const buffer = encodeWavBytes(samples, 48000);
    const bytes = new Uint8Array(buffer);
    const view = new DataView(buffer);

    expect(String.fromCharCode(...bytes.slice(0, 4))).toBe("RIFF");
    expect(String.fromCharCode(...bytes.slice(8, 12))).toBe("WAVE");
    expect(view.getUint16(20, true)).toBe(1); // integer PCM
    expect(view.getUint16(22, true)).toBe(1); // mono
    expect(view.getUint32(24, true)).toBe(48000);
    expect(view.getUint16(34, true)).toBe(16);
    expect(view.getUint32(40, true)).toBe(samples.length * 2);
    expect(bytes.length).toBe(44 + samples.length * 2);
  });

  it("quantizes within one 16-bit step and clips outliers", () => {
    const samples = new Float32Array([0.25, -0.75, 1.5, -1.5]);
    const view = new DataView(encodeWavBytes(samples, 16000));
    const read = (i: number) => view.getInt16(44 + 2 * i, true) / 32768;
    expect(Math.abs(read(0) - 0.25)).toBeLessThanOrEqual(1 / 32768);
    expect(Math.abs(read(1) + 0.75)).toBeLessThanOrEqual(1 / 32768);
    expect(read(2)).toBeCloseTo(32767 / 32768, 6);
    expect(read(3)).toBe(-1);
  });

  it("wraps the bytes in an audio/wav blob", () => {
    const blob = encodeWav(new Float32Array([0.1, -0.1]), 16000);
    expect(blob.type).toBe("audio/wav");
    expect(blob.size).toBe(44 + 4);
  });
});
