// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public class Object {
  public Object() {}

  public boolean equals(Object other) { return this == other; }

  public int hashCode() { return 31; }

  public String toString() { return "object"; }
}
