"""Text format for words, shared by the CLI and key files.

    up:u=<letters>;v=<letters>[;alphabet=<letters>]
    gen:example1
    gen:thue-morse:<a>,<b>
    gen:merge:<x-spec>|<y-spec>|<target>

Letters are comma separated. Without ``alphabet=`` an ultimately periodic word
is over exactly the letters it uses.
"""
from __future__ import annotations

from .words import (UPWord, WordStream, gen_example_one, gen_thue_morse, merge_z,
                    normalize_up, split_letters)


class WordSpecError(ValueError):
    pass


def parse_word(text: str):
    text = text.strip()
    try:
        if text.startswith("up:"):
            return _parse_up(text[3:])
        if text.startswith("gen:"):
            return _parse_gen(text[4:])
    except WordSpecError:
        raise
    except ValueError as e:
        raise WordSpecError(f"{text!r}: {e}") from e
    raise WordSpecError(f"unknown word spec {text!r}")


def _parse_up(body: str) -> UPWord:
    fields = {}
    for part in body.split(";"):
        if "=" not in part:
            raise WordSpecError(f"expected key=value in {part!r}")
        k, _, val = part.partition("=")
        k = k.strip()
        if k not in ("u", "v", "alphabet") or k in fields:
            raise WordSpecError(f"bad or repeated field {k!r}")
        fields[k] = split_letters(val)
    if "v" not in fields:
        raise WordSpecError("ultimately periodic spec needs v=")
    if not fields["v"]:
        raise WordSpecError("period v must be non-empty")
    u = fields.get("u", ())
    alphabet = fields.get("alphabet") or None
    return normalize_up(u, fields["v"], alphabet)


def _parse_gen(body: str) -> WordStream:
    if body == "example1":
        return gen_example_one()
    if body.startswith("thue-morse:"):
        letters = split_letters(body[len("thue-morse:"):])
        if len(letters) != 2:
            raise WordSpecError("thue-morse needs exactly two letters")
        return gen_thue_morse(*letters)
    if body.startswith("merge:"):
        parts = body[len("merge:"):].split("|")
        if len(parts) != 3:
            raise WordSpecError("merge needs <x>|<y>|<target>")
        x, y = parse_word(parts[0]), parse_word(parts[1])
        if not (isinstance(x, WordStream) and isinstance(y, WordStream)):
            raise WordSpecError("merge operands must be generator streams")
        return merge_z(x, y, parts[2].strip())
    raise WordSpecError(f"unknown generator {body!r}")


def format_stream_spec(x: WordStream) -> str:
    if x.tag == "example1":
        return "gen:example1"
    if x.tag == "thue-morse":
        return "gen:thue-morse:{},{}".format(*x.params)
    if x.tag == "merge":
        inner_x, inner_y, target = x.params
        return f"gen:merge:{inner_x.spec()}|{inner_y.spec()}|{target}"
    if x.tag == "up":
        return x.params[0].spec()
    return f"<{x.tag}>"


def format_word(x) -> str:
    return x.spec()
