// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public class ArrayIndexOutOfBoundsException extends IndexOutOfBoundsException {
  public ArrayIndexOutOfBoundsException() {}

  public ArrayIndexOutOfBoundsException(String message) { super(message); }
}
