// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.util;

public class Pair {
  public final Object first;
  public final Object second;

  public Pair(Object first, Object second) {
    this.first = first;
    this.second = second;
  }

  public Pair swap() { return new Pair(second, first); }

  public boolean equals(Object o) {
    if (!(o instanceof Pair)) return false;
    Pair p = (Pair) o;
    return p.first == first && p.second == second;
  }

  public int hashCode() {
    return (first == null ? 0 : 17) + (second == null ? 0 : 31);
  }

  public static boolean symmetric(int k) {
    Pair p = new Pair("a", (k & 1) == 0 ? "a" : "b");
    return p.equals(p.swap());
  }
}
