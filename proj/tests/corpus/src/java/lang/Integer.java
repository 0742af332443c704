// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public final class Integer {
  public static final int MIN_VALUE = 0x80000000;
  public static final int MAX_VALUE = 0x7fffffff;

  private final int value;

  public Integer(int value) { this.value = value; }

  public static Integer valueOf(int i) { return new Integer(i); }

  public int intValue() { return value; }

  public long longValue() { return value; }

  public int hashCode() { return value; }

  public boolean equals(Object o) { return o instanceof Integer && ((Integer) o).value == value; }

  public String toString() { return toString(value); }

  public static String toString(int i) { return new StringBuilder(12).append(i).toString(); }

  public static int parseInt(String s) {
    if (s == null || s.length() == 0) throw new NumberFormatException("empty");
    int i = 0;
    boolean negative = false;
    if (s.charAt(0) == 45) {
      negative = true;
      i = 1;
      if (s.length() == 1) throw new NumberFormatException("sign");
    }
    int result = 0;
    for (; i < s.length(); i++) {
      int d = Character.digit(s.charAt(i), 10);
      if (d < 0) throw new NumberFormatException("digit");
      result = result * 10 + d;
    }
    return negative ? -result : result;
  }

  public static int compare(int a, int b) { return a < b ? -1 : a == b ? 0 : 1; }

  public static int bitCount(int i) {
    int c = 0;
    while (i != 0) {
      i &= i - 1;
      c++;
    }
    return c;
  }

  public static int signum(int i) { return (i >> 31) | (-i >>> 31); }
}
