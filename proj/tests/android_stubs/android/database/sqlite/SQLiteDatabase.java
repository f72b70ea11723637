package android.database.sqlite;

import android.database.Cursor;

public class SQLiteDatabase {
    public Cursor rawQuery(String sql, String[] selectionArgs) {
        return new Cursor();
    }

    public Cursor query(String table, String selection) {
        return new Cursor();
    }
}
