import numpy as np
import pytest

from emphadet import AudioBuffer, condition, synth_utterance, tokenize, write_wav

# small deterministic corpus used across test modules
CORPUS_SENTENCES = [
    ("alpha", "u1", "I did not take your bag."),
    ("alpha", "u2", "Hello this is our project."),
    ("bravo", "u1", "There are few black rhinos left."),
    ("bravo", "u2", "Why give Sarah the sandwich."),
    ("carol", "u1", "I saw her face under the hood."),
]

_F0_BY_SPEAKER = {"alpha": 125.0, "bravo": 155.0, "carol": 185.0}


def corpus_utterance(speaker: str, utterance: str, sentence: str) -> AudioBuffer:
    tokens = tokenize(sentence)
    seed = abs(hash((speaker, utterance))) % (2 ** 31)
    return synth_utterance(tokens, f0_hz=_F0_BY_SPEAKER[speaker], seed=seed)


@pytest.fixture(scope="session")
def corpus():
    """List of (speaker, utterance_id, tokens, conditioned buffer)."""
    out = []
    for speaker, utt, sentence in CORPUS_SENTENCES:
        buf = condition(corpus_utterance(speaker, utt, sentence))
        out.append((speaker, utt, tokenize(sentence), buf))
    return out


@pytest.fixture(scope="session")
def fixture_root(tmp_path_factory, corpus):
    """On-disk fixture tree: <root>/<speaker>/<utterance>.{query.wav,ref.wav,txt}."""
    root = tmp_path_factory.mktemp("fixtures")
    for (speaker, utt, _tokens, buf), (_s, _u, sentence) in zip(
            corpus, [(s, u, t) for s, u, t in CORPUS_SENTENCES]):
        d = root / speaker
        d.mkdir(exist_ok=True)
        write_wav(buf, d / f"{utt}.query.wav")
        write_wav(buf, d / f"{utt}.ref.wav")
        (d / f"{utt}.txt").write_text(sentence, encoding="utf-8")
    return root


def sine_buffer(freq_hz: float, duration_s: float, rate: int = 16000,
                amplitude: float = 0.5) -> AudioBuffer:
    t = np.arange(int(round(duration_s * rate))) / rate
    return AudioBuffer(amplitude * np.sin(2 * np.pi * freq_hz * t), rate)
