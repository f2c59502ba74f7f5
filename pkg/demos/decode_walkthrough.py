"""Encode, corrupt and decode a word of the twisted ASL(3,2) code.

Run with ``python3 demos/decode_walkthrough.py``.
"""

from twistcode.channel import ChannelSpec, inject_errors
from twistcode.decoder import DecoderState, decode
from twistcode.fixtures import load_code, load_ubb
from twistcode.formats import format_word
from twistcode.perm import Permutation, hamming_distance

code = load_code("asl32")
ubb = load_ubb("asl32")
r_tw, r_prime = code.correction_params()
print(f"{code.name}: {code.lam} components of length {code.n}, |G| = {code.g1.order()}")
print(f"delta_rep = {code.delta_rep()}, delta_tw = {code.delta_tw()}, r_tw = {r_tw}, r' = {r_prime}")
print(f"UBB rows: {[''.join(map(str, b)) for b in ubb.bases]}")

state = DecoderState(code, ubb)

g = Permutation.from_cycles("(1,4,6,8,5,3)(2,7)", 8)
sent = code.encode(g).word
print(f"\nsent      {format_word(sent.symbols, code.n)}")

# a received word whose first two reads hit a repeated symbol
received = [4, 7, 1, 6, 7, 8, 2, 5, 4, 4, 6, 1, 8, 3, 5, 2]
print(f"received  {format_word(received, code.n)}  ({hamming_distance(sent, received)} errors)")
res = decode(state, received)
print(res.log(), end="")
print(f"recovered {res.permutation.cycle_string()}")

print(f"\nNow {r_tw} random errors on the same codeword, five seeds:")
for seed in range(5):
    w = inject_errors(sent, ChannelSpec(r_tw, seed))
    res = decode(state, w)
    ok = res.success and res.permutation == g
    print(f"  seed {seed}: {len(res.attempts):2d} attempts, {'recovered' if ok else 'FAILED'}")
