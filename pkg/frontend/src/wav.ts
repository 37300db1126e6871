// Client-side 16-bit PCM WAV encoding, so recordings upload in the one
// format the service accepts regardless of what the browser captured.

export function encodeWavBytes(samples: Float32Array, sampleRate: number): ArrayBuffer {
  const frames = samples.length;
  const buffer = new ArrayBuffer(44 + frames * 2);
  const view = new DataView(buffer);

  const writeAscii = (offset: number, text: string) => {
    for (let i = 0; i < text.length; i++) {
      view.setUint8(offset + i, text.charCodeAt(i));
    }
  };

  writeAscii(0, "RIFF");
  view.setUint32(4, 36 + frames * 2, true);
  writeAscii(8, "WAVE");
  writeAscii(12, "fmt ");
  view.setUint32(16, 16, true);
  view.setUint16(20, 1, true); // integer PCM
  view.setUint16(22, 1, true); // mono
  view.setUint32(24, sampleRate, true);
  view.setUint32(28, sampleRate * 2, true);
  view.setUint16(32, 2, true);
  view.setUint16(34, 16, true);
  writeAscii(36, "data");
  view.setUint32(40, frames * 2, true);

  for (let i = 0; i < frames; i++) {
    const clipped = Math.max(-1, Math.min(1, samples[i]));
    const code = Math.max(-32768, Math.min(32767, Math.round(clipped * 32768)));
    view.setInt16(44 + i * 2, code, true);
  }
  return buffer;
}

export function encodeWav(samples: Float32Array, sampleRate: number): Blob {
  return new Blob([encodeWavBytes(samples, sampleRate)], { type: "audio/wav" });
}
