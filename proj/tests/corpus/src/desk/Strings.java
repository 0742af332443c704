// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Strings {
  static String last;

  public static String pick(int k) {
    String s = (k & 1) == 0 ? "alpha" : "beta";
    last = s;
    return s;
  }

  public static boolean same(int a, int b) { return pick(a) == pick(b); }

  public static String orDefault(String s) { return s == null ? "default" : s; }

  public static int countNulls(String[] values) {
    if (values == null) return -1;
    int n = 0;
    for (int i = 0; i < values.length; i++) if (values[i] == null) n++;
    return n;
  }

  public static String[] words() { return new String[] {"one", "two", "three"}; }

  public static Object asObject() { return "object-literal"; }
}
