#!/usr/bin/env python3
"""Assembles the fixture sources with clang and writes rv32-sim hex images."""
import subprocess
import tempfile
from pathlib import Path

HERE = Path(__file__).parent


def assemble(src: Path) -> bytes:
    with tempfile.TemporaryDirectory() as tmp:
        obj, binf = Path(tmp) / "a.o", Path(tmp) / "a.bin"
        subprocess.run(["clang", "--target=riscv32", "-march=rv32i", "-c", str(src), "-o", str(obj)],
                       check=True)
        subprocess.run(["ld.lld", str(obj), "--oformat=binary", "-Ttext=0", "-o", str(binf)],
                       check=True)
        return binf.read_bytes()


def segment_lines(base: int, data: bytes):
    for off in range(0, len(data), 16):
        chunk = data[off:off + 16]
        yield f"@{base + off:08X} " + " ".join(f"{b:02X}" for b in chunk)


def write_image(name: str, code: bytes, extra=()):
    lines = [f"# {name}: generated by build_fixtures.py from {name}.s", "entry 00000000"]
    lines += segment_lines(0, code)
    for base, data in extra:
        lines += segment_lines(base, data)
    (HERE / f"{name}.hex").write_text("\n".join(lines) + "\n")


def main():
    write_image("fib", assemble(HERE / "fib.s"))
    # 64 source bytes with no zero byte so an unwritten destination is distinguishable.
    src = bytes((i * 37 + 11) & 0xFF or 0xA5 for i in range(64))
    write_image("memcpy", assemble(HERE / "memcpy.s"), [(0x1000, src)])
    (HERE / "fib.bin").write_bytes(assemble(HERE / "fib.s"))


if __name__ == "__main__":
    main()
