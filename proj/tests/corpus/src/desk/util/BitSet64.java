// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.util;

public class BitSet64 {
  private long bits;

  public void set(int i) { bits |= 1L << (i & 63); }

  public void clear(int i) { bits &= ~(1L << (i & 63)); }

  public boolean get(int i) { return (bits & (1L << (i & 63))) != 0; }

  public int cardinality() {
    long b = bits;
    int c = 0;
    while (b != 0) {
      b &= b - 1;
      c++;
    }
    return c;
  }

  public static int pattern(int k) {
    BitSet64 s = new BitSet64();
    for (int i = 0; i < 64; i += 1 + (k & 3)) s.set(i);
    s.clear(k);
    return s.cardinality() + (s.get(k + 1) ? 100 : 0);
  }
}
