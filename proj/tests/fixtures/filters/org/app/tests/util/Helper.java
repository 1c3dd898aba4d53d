package org.app.tests.util;

public class Helper {
    public void assist() {
        int count = 0;
        count = count + 1;
    }
}
