package android.database;

public class Cursor {
    public void close() {
    }

    public boolean moveToNext() {
        return false;
    }

    public String getString(int column) {
        return "";
    }
}
